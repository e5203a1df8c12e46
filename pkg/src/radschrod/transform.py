"""Changes of variable that map the radial problem from (0, inf) to (0, 1).

Every transform yields coefficient evaluators for

    -A2(t) v'' + A1(t) v' + A0(t) v = lambda W(t) v,    0 < t < 1,

with ``v(0) = 0``. Evaluators are vectorised: given nodes ``t`` of shape
``(n,)`` they return arrays of shape ``(n, m, m)``. They are only ever
called on the open interval.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .potential import PotentialSpec, evaluate

__all__ = [
    "TransformKind",
    "RightBC",
    "TransformedProblem",
    "build_tds",
    "build_tcii",
    "build_atcii",
    "build",
    "xi_heuristic",
    "XI_BASE",
]

XI_BASE = 1.35

Evaluator = Callable[[np.ndarray], np.ndarray]


class TransformKind(enum.Enum):
    TDS = "tds"
    TCII = "tcii"
    ATCII = "atcii"


class RightBC(enum.Enum):
    DIRICHLET = "dirichlet"
    COUPLED_TDS = "coupled_tds"


@dataclass(frozen=True)
class TransformedProblem:
    m: int
    a2: Evaluator
    a1: Evaluator
    a0: Evaluator
    w: Evaluator
    right_bc: RightBC
    map_t_of_r: Callable
    map_r_of_t: Callable
    kind: TransformKind
    potential: PotentialSpec
    ell: int
    meta: dict = field(default_factory=dict)


def _check_interior(t) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t <= 0.0) | (t >= 1.0)):
        raise ValueError("coefficients are only defined on the open interval (0, 1)")
    return t


def _scalar(fn: Callable[[np.ndarray], np.ndarray]) -> Evaluator:
    def ev(t):
        t = _check_interior(t)
        return np.asarray(fn(t), dtype=float).reshape(-1, 1, 1) * np.ones((t.size, 1, 1))

    return ev


def _diag2(f1, f2) -> Evaluator:
    def ev(t):
        t = _check_interior(t)
        out = np.zeros((t.size, 2, 2))
        out[:, 0, 0] = f1(t)
        out[:, 1, 1] = f2(t)
        return out

    return ev


def _check_ell(ell: int) -> int:
    if int(ell) != ell or ell < 0:
        raise ValueError(f"angular momentum must be a nonnegative integer, got {ell}")
    return int(ell)


def build_tds(p: PotentialSpec, ell: int) -> TransformedProblem:
    """Split at ``r = 1`` and map ``[1, inf)`` by ``t = 1/r``.

    The unknown is ``(u(t), z(t))`` with ``u`` the solution on ``(0, 1]`` and
    ``z(t) = u(1/t)``; the second equation is multiplied through by ``t**4``.
    """
    ell = _check_ell(ell)
    c = ell * (ell + 1)
    return TransformedProblem(
        m=2,
        a2=_diag2(np.ones_like, lambda t: t**4),
        a1=_diag2(np.zeros_like, lambda t: -2.0 * t**3),
        a0=_diag2(lambda t: c / t**2 + evaluate(p, t), lambda t: c * t**2 + evaluate(p, 1.0 / t)),
        w=_diag2(np.ones_like, np.ones_like),
        right_bc=RightBC.COUPLED_TDS,
        # maps of the outer piece; the inner piece uses t = r unchanged
        map_t_of_r=lambda r: 1.0 / np.asarray(r, dtype=float),
        map_r_of_t=lambda t: 1.0 / np.asarray(t, dtype=float),
        kind=TransformKind.TDS,
        potential=p,
        ell=ell,
    )


def build_tcii(p: PotentialSpec, ell: int, xi: float) -> TransformedProblem:
    """Compress with ``t = r / (r + xi)``, scaled so that ``W = 1``."""
    ell = _check_ell(ell)
    if not (np.isfinite(xi) and xi > 0.0):
        raise ValueError(f"xi must be positive, got {xi}")
    xi = float(xi)
    c = ell * (ell + 1)
    xi2 = xi * xi

    def a0(t):
        s = 1.0 - t
        return c * s**2 / (xi2 * t**2) + evaluate(p, xi * t / s)

    return TransformedProblem(
        m=1,
        a2=_scalar(lambda t: (1.0 - t) ** 4 / xi2),
        a1=_scalar(lambda t: 2.0 * (1.0 - t) ** 3 / xi2),
        a0=_scalar(a0),
        w=_scalar(np.ones_like),
        right_bc=RightBC.DIRICHLET,
        map_t_of_r=lambda r: np.asarray(r, dtype=float) / (np.asarray(r, dtype=float) + xi),
        map_r_of_t=lambda t: xi * np.asarray(t, dtype=float) / (1.0 - np.asarray(t, dtype=float)),
        kind=TransformKind.TCII,
        potential=p,
        ell=ell,
        meta={"xi": xi},
    )


def build_atcii(p: PotentialSpec, ell: int) -> TransformedProblem:
    """Compress with ``t = 1 - (1 + r)**(-1/2)``.

    Here ``dt/dr = (1-t)**3 / 2`` and ``d2t/dr2 = -3 (1-t)**5 / 4``.
    """
    ell = _check_ell(ell)
    c = ell * (ell + 1)

    def r_of_t(t):
        t = np.asarray(t, dtype=float)
        # (1-t)^-2 - 1 written to keep accuracy for small t
        s = 1.0 - t
        return t * (2.0 - t) / (s * s)

    def a0(t):
        r = r_of_t(t)
        return c / r**2 + evaluate(p, r)

    return TransformedProblem(
        m=1,
        a2=_scalar(lambda t: (1.0 - t) ** 6 / 4.0),
        a1=_scalar(lambda t: 0.75 * (1.0 - t) ** 5),
        a0=_scalar(a0),
        w=_scalar(np.ones_like),
        right_bc=RightBC.DIRICHLET,
        map_t_of_r=lambda r: -np.expm1(-0.5 * np.log1p(np.asarray(r, dtype=float))),
        map_r_of_t=r_of_t,
        kind=TransformKind.ATCII,
        potential=p,
        ell=ell,
        meta={"beta": 0.5},
    )


def xi_heuristic(ell: int, order: int) -> float:
    """Default TCII scale ``1.35**order * (ell + 1)``."""
    if order not in (2, 4, 6, 8, 10, 12):
        raise ValueError(f"scheme order must be one of 2, 4, ..., 12, got {order}")
    return XI_BASE**order * (_check_ell(ell) + 1)


def build(kind, p: PotentialSpec, ell: int, *, xi: float | None = None, order: int | None = None) -> TransformedProblem:
    """Dispatch on the transform name. ``xi=None`` selects the heuristic for ``order``."""
    kind = TransformKind(kind) if not isinstance(kind, TransformKind) else kind
    if kind is TransformKind.TDS:
        return build_tds(p, ell)
    if kind is TransformKind.ATCII:
        return build_atcii(p, ell)
    if xi is None:
        if order is None:
            raise ValueError("TCII needs either xi or the scheme order for the heuristic")
        xi = xi_heuristic(ell, order)
    return build_tcii(p, ell, xi)
