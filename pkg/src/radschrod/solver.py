"""End-to-end helpers: potential + transform + mesh -> bound-state spectrum."""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from .assembly import assemble
from .eigen import DEFAULT_IMAG_TOL, SpectrumResult, eigenvalue_for, filter_physical, solve_spectrum
from .potential import PotentialSpec
from .transform import TransformKind, build, xi_heuristic

__all__ = ["compute_spectrum", "relative_error", "observed_order", "ERROR_FLOOR"]

log = logging.getLogger(__name__)

ERROR_FLOOR = 1e-16


def compute_spectrum(
    potential: PotentialSpec,
    ell: int,
    *,
    transform: str | TransformKind = "tcii",
    order: int = 8,
    n: int = 200,
    xi: Optional[float] = None,
    imag_tol: float = DEFAULT_IMAG_TOL,
    min_lambda: Optional[float] = None,
) -> SpectrumResult:
    """Bound-state eigenvalue approximations for one configuration.

    ``order`` is the scheme order ``p = 2k``. For TCII, ``xi=None`` picks the
    heuristic scale for ``(ell, order)``.
    """
    if order % 2 or order < 2:
        raise ValueError(f"scheme order must be a positive even integer, got {order}")
    kind = TransformKind(transform) if not isinstance(transform, TransformKind) else transform
    if kind is TransformKind.TCII and xi is None:
        xi = xi_heuristic(ell, order)
        log.info("xi=auto resolved to %.17g (ell=%d, order=%d)", xi, ell, order)
    tp = build(kind, potential, ell, xi=xi, order=order)
    evp = assemble(tp, n, order // 2)
    raw = solve_spectrum(evp)
    meta = {
        "transform": kind.value,
        "n_points": n,
        "k": order // 2,
        "xi": xi if kind is TransformKind.TCII else None,
        "potential": potential.name,
        "alpha": potential.alpha,
        "ell": ell,
    }
    return filter_physical(raw, imag_tol, min_lambda=min_lambda, meta=meta)


def relative_error(approx: float, reference: float) -> float:
    """``|approx - reference| / |reference|``, floored so logarithms stay finite."""
    return max(abs(approx - reference) / abs(reference), ERROR_FLOOR)


def observed_order(hs: Sequence[float], errors: Sequence[float], last: Optional[int] = None) -> float:
    """Least-squares slope of ``log(error)`` against ``log(h)``.

    ``last`` restricts the fit to the final ``last`` points.
    """
    hs = np.asarray(hs, dtype=float)
    errors = np.maximum(np.asarray(errors, dtype=float), ERROR_FLOOR)
    if last is not None:
        hs, errors = hs[-last:], errors[-last:]
    if hs.size < 2:
        raise ValueError("need at least two points to fit an order")
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)

