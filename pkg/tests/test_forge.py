import pytest

from kslim.forge import BUILTIN_NAMES, ExampleSpec, example, make_example, parse_example_name
from kslim.hodge import classify_type, validate_pmhs_k3
from kslim.linalg import Subspace, image
from kslim.quadratic import signature
from kslim.scalars import GaussianRational


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_validate(name):
    m = example(name)
    spec = parse_example_name(name)
    assert validate_pmhs_k3(m).passed
    assert classify_type(m.N) == spec.type
    assert m.rank == spec.rank
    assert signature(m.quad) == (2, m.rank - 2)


def test_III3_period():
    m = example("EX-III.3")
    assert m.quad.norm(m.v_lim) == 0
    assert m.quad.hermitian(m.v_lim) == 4


def test_II4_image():
    m = example("EX-II.4")
    assert (m.N @ m.N).is_zero()
    assert image(m.N) == Subspace.span([(1, 0, 0, 1), (0, 1, 1, 0)], 4)


def test_padding():
    m = example("EX-III.5")
    assert signature(m.quad) == (2, 3)
    assert all(m.N[i, j] == 0 for i in range(5) for j in range(3, 5))


def test_name_forms():
    assert parse_example_name("II:4") == parse_example_name("EX-II.4") == parse_example_name("ii.4")
    assert ExampleSpec("II", 4).name == "EX-II.4"


def test_rejections():
    with pytest.raises(ValueError):
        ExampleSpec("II", 3)
    with pytest.raises(ValueError):
        ExampleSpec("IV", 5)
    with pytest.raises(KeyError) as err:
        example("EX-IV.3")
    assert "EX-II.4" in str(err.value)


def test_make_example_is_deterministic():
    assert make_example(ExampleSpec("III", 4)) == make_example(ExampleSpec("III", 4))
    v = example("EX-I.3").v_lim
    assert v[1] == GaussianRational(0, 1)
