"""Bound states of the radial Schrodinger equation on (0, inf).

The problem is mapped to (0, 1) by a change of variable, discretised with
order-2k finite-difference matrix methods and handed to a dense
eigensolver.
"""

from .assembly import DiscreteEVP, assemble, build_diff_matrices
from .eigen import SpectrumResult, eigenvalue_for, filter_physical, solve_spectrum
from .potential import PotentialKind, PotentialSpec, evaluate, exact_eigenvalue
from .solver import compute_spectrum, observed_order, relative_error
from .stencil import StencilSet, derive_additional, derive_bdf, derive_main, stencil_set
from .transform import TransformedProblem, build, build_atcii, build_tcii, build_tds, xi_heuristic

__version__ = "0.1.0"

__all__ = [
    "DiscreteEVP",
    "PotentialKind",
    "PotentialSpec",
    "SpectrumResult",
    "StencilSet",
    "TransformedProblem",
    "assemble",
    "build",
    "build_atcii",
    "build_diff_matrices",
    "build_tcii",
    "build_tds",
    "compute_spectrum",
    "derive_additional",
    "derive_bdf",
    "derive_main",
    "eigenvalue_for",
    "evaluate",
    "exact_eigenvalue",
    "filter_physical",
    "observed_order",
    "relative_error",
    "solve_spectrum",
    "stencil_set",
    "xi_heuristic",
]
