"""Radial potentials and their known bound-state spectra."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = ["PotentialKind", "PotentialSpec", "evaluate", "exact_eigenvalue"]

# Below this value of alpha*r the Hulthen denominator is expanded in series.
_HULTHEN_SERIES_CUTOFF = 1e-4


class PotentialKind(enum.Enum):
    HYDROGEN = "hydrogen"
    HULTHEN = "hulthen"
    YUKAWA = "yukawa"
    CUSTOM = "custom"


@dataclass(frozen=True)
class PotentialSpec:
    """A radial potential ``V(r)`` with its screening parameter.

    ``alpha`` is ignored for hydrogen. A custom potential must give both a
    vectorised callable and the finite limit of ``r * V(r)`` at the origin.
    """

    kind: PotentialKind
    alpha: float = 0.0
    custom_eval: Optional[Callable[[np.ndarray], np.ndarray]] = None
    custom_origin_limit: Optional[float] = None

    def __post_init__(self):
        kind = self.kind
        if isinstance(kind, str):
            try:
                kind = PotentialKind(kind.lower())
            except ValueError:
                raise ValueError(f"unknown potential {self.kind!r}") from None
            object.__setattr__(self, "kind", kind)
        if kind in (PotentialKind.HULTHEN, PotentialKind.YUKAWA):
            if not (math.isfinite(self.alpha) and self.alpha >= 0.0):
                raise ValueError(f"screening parameter must be finite and >= 0, got {self.alpha}")
            if kind is PotentialKind.HULTHEN and self.alpha == 0.0:
                raise ValueError("Hulthen potential needs alpha > 0")
        if kind is PotentialKind.CUSTOM:
            if self.custom_eval is None:
                raise ValueError("custom potential needs custom_eval")
            if self.custom_origin_limit is None or not math.isfinite(self.custom_origin_limit):
                raise ValueError("custom potential needs a finite custom_origin_limit (lim r*V(r), r->0+)")

    @classmethod
    def hydrogen(cls) -> "PotentialSpec":
        return cls(PotentialKind.HYDROGEN)

    @classmethod
    def hulthen(cls, alpha: float) -> "PotentialSpec":
        return cls(PotentialKind.HULTHEN, float(alpha))

    @classmethod
    def yukawa(cls, alpha: float) -> "PotentialSpec":
        return cls(PotentialKind.YUKAWA, float(alpha))

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def origin_limit(self) -> float:
        """``lim r*V(r)`` as ``r -> 0+``."""
        if self.kind is PotentialKind.CUSTOM:
            return float(self.custom_origin_limit)
        return -2.0

    @property
    def has_exact_spectrum(self) -> bool:
        return self.kind is PotentialKind.HYDROGEN or self.kind is PotentialKind.HULTHEN

    def __call__(self, r):
        return evaluate(self, r)


def _hulthen(alpha: float, r: np.ndarray) -> np.ndarray:
    x = alpha * r
    out = np.empty_like(x)
    small = x < _HULTHEN_SERIES_CUTOFF
    xs = x[small]
    out[small] = -2.0 * alpha / (xs + xs**2 / 2.0 + xs**3 / 6.0)
    xl = x[~small]
    # -2a e^{-x}/(1-e^{-x}) = -2a/expm1(x); expm1 overflows to inf -> 0.
    with np.errstate(over="ignore"):
        out[~small] = -2.0 * alpha / np.expm1(xl)
    return out


def evaluate(p: PotentialSpec, r):
    """Evaluate ``V(r)`` for scalar or array ``r > 0``."""
    scalar = np.ndim(r) == 0
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0.0)):
        raise ValueError("potential evaluated at r <= 0")
    if p.kind is PotentialKind.HYDROGEN:
        v = -2.0 / r
    elif p.kind is PotentialKind.HULTHEN:
        v = _hulthen(p.alpha, np.atleast_1d(r)).reshape(r.shape)
    elif p.kind is PotentialKind.YUKAWA:
        with np.errstate(under="ignore"):
            v = -2.0 * np.exp(-p.alpha * r) / r
    else:
        v = np.asarray(p.custom_eval(r), dtype=float)
    return float(v) if scalar else v


def exact_eigenvalue(p: PotentialSpec, n: int, ell: int) -> Optional[float]:
    """Closed-form eigenvalue for principal number ``n``, or ``None``.

    Hydrogen: ``-1/n**2``. Hulthen with ``ell = 0``:
    ``-((2 - n**2 alpha) / (2n))**2`` while ``n**2 alpha < 2``.
    """
    if ell < 0 or n < ell + 1:
        raise ValueError(f"need n >= ell + 1, got n={n}, ell={ell}")
    if p.kind is PotentialKind.HYDROGEN:
        return -1.0 / n**2
    if p.kind is PotentialKind.HULTHEN and ell == 0:
        if n * n * p.alpha >= 2.0:
            return None
        return -(((2.0 - n * n * p.alpha) / (2.0 * n)) ** 2)
    return None
