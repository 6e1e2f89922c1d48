"""Exact computations for Kuga-Satake limit mixed Hodge structures of K3 type.

Everything runs over Q and Q(i) with ``fractions.Fraction``; no floating point.
"""

__version__ = "0.1.0"

from .clifford import CliffordAlgebra, eta, right_ideal, spin_exp
from .degeneration import central_fibre_h1, dual_complex_cohomology, motivic_zeta, neron_data
from .forge import example, make_example
from .hodge import K3LimitMHS, hodge_diamond_k3, validate_pmhs_k3, weight_filtration_k3
from .kuga_satake import hodge_diamond_ab, ks_lim, orbit_commutativity_check, polarization_form
from .quadratic import QuadSpace

__all__ = [
    "CliffordAlgebra", "K3LimitMHS", "QuadSpace", "central_fibre_h1", "dual_complex_cohomology", "eta",
    "example", "hodge_diamond_ab", "hodge_diamond_k3", "ks_lim", "make_example", "motivic_zeta", "neron_data",
    "orbit_commutativity_check", "polarization_form", "right_ideal", "spin_exp", "validate_pmhs_k3",
    "weight_filtration_k3",
]
