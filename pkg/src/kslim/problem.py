"""Problem files: a K3 limit MHS plus run options, as a JSON document.

All numbers are exact strings (``"p/q"`` or ``"p"``); ``v_lim`` is split into
real and imaginary parts. Example::

    {"rank": 3,
     "gram": [["2","0","0"], ["0","2","0"], ["0","0","-2"]],
     "N": [["0","0","0"], ["0","0","0"], ["0","0","0"]],
     "v_lim_re": ["1","0","0"], "v_lim_im": ["0","1","0"],
     "zeta_terms": 5}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .hodge import K3LimitMHS
from .linalg import Mat
from .quadratic import QuadSpace
from .scalars import GaussianRational, format_rational, imag_part, parse_rational, real_part

DEFAULT_ZETA_TERMS = 5
_KEYS = {"rank", "gram", "N", "v_lim_re", "v_lim_im", "neron_components", "zeta_terms"}


class ProblemParseError(ValueError):
    """Malformed problem file (as opposed to a well-formed but invalid structure)."""


@dataclass(frozen=True)
class ProblemFile:
    structure: K3LimitMHS
    neron_components: int | None = None
    zeta_terms: int = DEFAULT_ZETA_TERMS

    @property
    def rank(self) -> int:
        return self.structure.rank


def _matrix(data, r: int, key: str) -> Mat:
    if not isinstance(data, list) or len(data) != r:
        raise ProblemParseError(f"{key}: expected {r} rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != r:
            raise ProblemParseError(f"{key}[{i}]: expected {r} entries")
        try:
            rows.append([parse_rational(x) for x in row])
        except ValueError as exc:
            raise ProblemParseError(f"{key}[{i}]: {exc}") from None
    return Mat(rows, r)


def _vector(data, r: int, key: str) -> list:
    if not isinstance(data, list) or len(data) != r:
        raise ProblemParseError(f"{key}: expected {r} entries")
    try:
        return [parse_rational(x) for x in data]
    except ValueError as exc:
        raise ProblemParseError(f"{key}: {exc}") from None


def _positive_int(data, key: str) -> int:
    if isinstance(data, bool) or not isinstance(data, (int, str)):
        raise ProblemParseError(f"{key}: expected a positive integer")
    try:
        n = int(data)
    except ValueError:
        raise ProblemParseError(f"{key}: expected a positive integer") from None
    if n < 1:
        raise ProblemParseError(f"{key}: expected a positive integer, got {n}")
    return n


def problem_from_dict(data: dict) -> ProblemFile:
    """Build a ``ProblemFile``; raises ``ProblemParseError`` on any shape or literal problem.

    The result is not validated against the axioms; that is the caller's job.
    """
    if not isinstance(data, dict):
        raise ProblemParseError("top level must be an object")
    unknown = set(data) - _KEYS
    if unknown:
        raise ProblemParseError(f"unknown keys: {', '.join(sorted(unknown))}")
    missing = {"rank", "gram", "N", "v_lim_re", "v_lim_im"} - set(data)
    if missing:
        raise ProblemParseError(f"missing keys: {', '.join(sorted(missing))}")
    r = _positive_int(data["rank"], "rank")
    gram = _matrix(data["gram"], r, "gram")
    if gram != gram.T:
        raise ProblemParseError("gram: matrix is not symmetric")
    N = _matrix(data["N"], r, "N")
    re = _vector(data["v_lim_re"], r, "v_lim_re")
    im = _vector(data["v_lim_im"], r, "v_lim_im")
    v = tuple(GaussianRational(a, b) if b else a for a, b in zip(re, im))
    comps = data.get("neron_components")
    comps = None if comps is None else _positive_int(comps, "neron_components")
    terms = _positive_int(data.get("zeta_terms", DEFAULT_ZETA_TERMS), "zeta_terms")
    return ProblemFile(K3LimitMHS(QuadSpace(gram), N, v), comps, terms)


def parse_problem(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemParseError(f"not valid JSON: {exc}") from None
    return problem_from_dict(data)


def load_problem(path: str | Path) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemParseError(f"cannot read {path}: {exc}") from None
    return parse_problem(text)


def _mat_strings(M: Mat) -> list:
    return [[format_rational(x) for x in M.row(i)] for i in range(M.rows)]


def structure_to_dict(m: K3LimitMHS) -> dict:
    return {
        "rank": m.rank,
        "gram": _mat_strings(m.quad.gram),
        "N": _mat_strings(m.N),
        "v_lim_re": [format_rational(real_part(x)) for x in m.v_lim],
        "v_lim_im": [format_rational(imag_part(x)) for x in m.v_lim],
    }


def problem_to_dict(p: ProblemFile) -> dict:
    out = structure_to_dict(p.structure)
    out["zeta_terms"] = p.zeta_terms
    if p.neron_components is not None:
        out["neron_components"] = p.neron_components
    return out


def dumps(data) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_problem(p: ProblemFile) -> str:
    return dumps(problem_to_dict(p))
