from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kslim.forge import example
from kslim.scalars import GaussianRational

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
gaussians = st.builds(GaussianRational, rationals, rationals)
scalars = st.one_of(rationals, gaussians)


@pytest.fixture(scope="session")
def ex_I3():
    return example("EX-I.3")


@pytest.fixture(scope="session")
def ex_II4():
    return example("EX-II.4")


@pytest.fixture(scope="session")
def ex_III3():
    return example("EX-III.3")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
