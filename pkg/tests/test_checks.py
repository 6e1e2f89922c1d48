import pytest

from kslim.checks import naive_monodromy_check, run_suite, structure_checks
from kslim.forge import example


@pytest.mark.parametrize("seed", [0, 1])
def test_full_suite_passes(seed):
    results = run_suite("all", seed, naive_monodromy=True, conjugates=2)
    failed = [(c.name, c.detail) for c in results if not c.passed]
    assert not failed
    assert len(results) == 25


def test_naive_monodromy_regression():
    assert naive_monodromy_check().passed


def test_structure_checks_on_padded():
    results = structure_checks(example("EX-III.4"))
    assert all(c.passed for c in results), [c for c in results if not c.passed]


def test_unknown_scope():
    with pytest.raises(ValueError):
        run_suite("everything")
