"""Built-in limit mixed Hodge structures of each degeneration type.

Minimal ranks are 3 for types I and III and 4 for type II (two hyperbolic
planes are needed). Higher ranks pad with an orthogonal ``diag(-2, ..., -2)``
on which ``N`` acts by zero.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .hodge import InvalidStructureError, K3LimitMHS, classify_type, validate_pmhs_k3
from .linalg import Mat
from .quadratic import QuadSpace, random_invertible
from .scalars import GaussianRational

MIN_RANK = {"I": 3, "II": 4, "III": 3}

_h = Fraction(1, 2)


@dataclass(frozen=True)
class ExampleSpec:
    type: str
    rank: int
    padding: str = "diag(-2)"

    def __post_init__(self):
        if self.type not in MIN_RANK:
            raise ValueError(f"unknown degeneration type {self.type!r}")
        if self.rank < MIN_RANK[self.type]:
            raise ValueError(f"type {self.type} needs rank >= {MIN_RANK[self.type]}, got {self.rank}")
        if self.padding != "diag(-2)":
            raise ValueError(f"unsupported padding {self.padding!r}")

    @property
    def name(self) -> str:
        return f"EX-{self.type}.{self.rank}"


def _core(kind: str):
    i = GaussianRational(0, 1)
    if kind == "I":
        G = [2, 2, -2]
        N = Mat.zeros(3, 3)
        v = (1, i, 0)
    elif kind == "II":
        # U = <e2, e3>, U' = <e1, e4>; N e1 = -N e4 = (e2+e3)/2, N e3 = -N e2 = (e1+e4)/2.
        G = [2, 2, -2, -2]
        N = Mat.from_columns([(0, _h, _h, 0), (-_h, 0, 0, -_h), (_h, 0, 0, _h), (0, -_h, -_h, 0)])
        v = (1, i, 0, 0)
    else:
        # q(e3, e3) = 2: N e1 = -e3, N e2 = e3, N e3 = e1 + e2.
        G = [2, -2, 2]
        N = Mat.from_columns([(0, 0, -1), (0, 0, 1), (1, 1, 0)])
        v = (1, 0, -i)
    return G, N, v


def _pad(G, N: Mat, v, rank: int):
    extra = rank - len(G)
    G = list(G) + [-2] * extra
    n = N.rows
    rows = [list(N.row(k)) + [0] * extra for k in range(n)] + [[0] * rank for _ in range(extra)]
    return G, Mat(rows, rank), tuple(v) + (0,) * extra


def make_example(spec: ExampleSpec) -> K3LimitMHS:
    """Build the named structure, fixing the signs of ``N`` and ``v_lim`` by validation."""
    G, N, v = _pad(*_core(spec.type), spec.rank)
    Q = QuadSpace.diagonal(G)
    v = tuple(Fraction(x) if isinstance(x, int) else x for x in v)
    vbar = tuple(x.conjugate() if isinstance(x, GaussianRational) else x for x in v)
    for N_try in (N, -N):
        for v_try in (v, vbar):
            m = K3LimitMHS(Q, N_try, v_try)
            if validate_pmhs_k3(m).passed:
                if classify_type(m.N) != spec.type:
                    raise AssertionError("constructed example has the wrong type")
                return m
    raise InvalidStructureError(f"no sign choice validates {spec.name}")


def parse_example_name(name: str) -> ExampleSpec:
    """Accept ``EX-II.4``, ``II.4``, ``II:4`` (case-insensitive)."""
    m = re.fullmatch(r"(?:EX-)?(I{1,3})[.:](\d+)", name.strip(), flags=re.IGNORECASE)
    if not m:
        raise KeyError(name)
    return ExampleSpec(m.group(1).upper(), int(m.group(2)))


BUILTIN_NAMES = ("EX-I.3", "EX-I.4", "EX-I.5", "EX-II.4", "EX-II.5", "EX-II.6",
                 "EX-III.3", "EX-III.4", "EX-III.5")


def available_names() -> list[str]:
    return list(BUILTIN_NAMES)


def example(name: str) -> K3LimitMHS:
    """Built-in by name; unknown names raise ``KeyError`` listing what exists."""
    try:
        spec = parse_example_name(name)
    except (KeyError, ValueError):
        raise KeyError(f"unknown example {name!r}; available: {', '.join(BUILTIN_NAMES)}") from None
    return make_example(spec)


def random_congruent(m: K3LimitMHS, rng: random.Random, bound: int = 2) -> K3LimitMHS:
    """Same structure in random rational coordinates ``x = P y``."""
    return m.congruent(random_invertible(m.rank, rng, bound))
