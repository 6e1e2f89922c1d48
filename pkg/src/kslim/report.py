"""Assemble analysis reports as plain dictionaries of exact strings and integers."""

from __future__ import annotations

from .checks import structure_checks
from .degeneration import (central_fibre_h1, component_lower_bound, dual_complex_betti, motivic_zeta,
                           neron_data)
from .hodge import ValidationReport, hodge_diamond_k3, require_valid, weight_filtration_k3
from .kuga_satake import hodge_diamond_ab, ks_lim
from .problem import ProblemFile, problem_to_dict
from .scalars import format_gaussian

# The orbit check is a full polynomial certificate; above this d it dominates the runtime.
ORBIT_CHECK_MAX_D = 32


def _vectors(vs) -> list:
    return [[format_gaussian(x) for x in v] for v in vs]


def validation_dict(rep: ValidationReport) -> dict:
    return {
        "passed": rep.passed,
        "checks": [{"axiom": c.axiom, "name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in rep.checks],
    }


def analyze(problem: ProblemFile, checks: bool = True) -> dict:
    """Full pipeline for one problem; raises ``InvalidStructureError`` on invalid input."""
    m = problem.structure
    r = m.rank
    validation = require_valid(m)
    W = weight_filtration_k3(m.quad, m.N)
    a = ks_lim(m)
    cf = central_fibre_h1(m, a)
    nd = neron_data(m, a)
    zeta = motivic_zeta(m, problem.zeta_terms, problem.neron_components, a=a)
    report = {
        "input": problem_to_dict(problem),
        "type": a.type,
        "validation": validation_dict(validation),
        "k3": {
            "weight_dims": list(W.dims()),
            "diamond": hodge_diamond_k3(m).as_dict(),
        },
        "kuga_satake": {
            "d": a.d,
            "dim_F1": a.F1.dim,
            "dim_W0": a.W0.dim,
            "dim_W1": a.W1.dim,
            "diamond": hodge_diamond_ab(a).as_dict(),
        },
        "central_fibre": {
            "diamond": cf.diamond.as_dict(),
            "w": cf.w,
            "dimB": cf.dimB,
        },
        "dual_complex": {
            "betti": dual_complex_betti(m, a),
            "component_lower_bound": component_lower_bound(a.type, r),
        },
        "neron": {
            "w": nd.w,
            "dimB": nd.dimB,
            "component_birational_type": nd.component_birational_type,
            "gr1_basis": _vectors(nd.gr1_basis),
            "gr1_F1_basis": _vectors(nd.gr1_F1_basis),
        },
        "zeta": [z.render() for z in zeta],
    }
    if checks:
        results = structure_checks(m, a, orbit=a.d <= ORBIT_CHECK_MAX_D)
        report["verification"] = {c.name: c.passed for c in results}
    return report


def render_text(report: dict) -> str:
    """Short human-readable summary of an analysis report."""
    ks = report["kuga_satake"]
    lines = [
        f"type {report['type']}, rank {report['input']['rank']}",
        f"K3 weight dims W0..W4: {report['k3']['weight_dims']}",
        f"K3 diamond: {_diamond(report['k3']['diamond'])}",
        f"Kuga-Satake: d = {ks['d']}, dim F1 = {ks['dim_F1']}, dim W0 = {ks['dim_W0']}, dim W1 = {ks['dim_W1']}",
        f"Kuga-Satake diamond: {_diamond(ks['diamond'])}",
        f"central fibre H^1: {_diamond(report['central_fibre']['diamond'])}",
        f"dual complex Betti numbers: {report['dual_complex']['betti']}, "
        f"at least {report['dual_complex']['component_lower_bound']} components",
        f"Neron: w = {report['neron']['w']}, dim B = {report['neron']['dimB']}, "
        f"component type {report['neron']['component_birational_type']}",
        "zeta: " + " + ".join(report["zeta"]) + " + ...",
    ]
    for name, ok in report.get("verification", {}).items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    return "\n".join(lines) + "\n"


def _diamond(d: dict) -> str:
    return ", ".join(f"h^{k}={v}" for k, v in d.items()) or "0"
