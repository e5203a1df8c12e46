"""Dense eigensolves and reduction of the raw spectrum to bound states."""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .assembly import DiscreteEVP, write_matrix

__all__ = [
    "EigenSolverError",
    "SpectrumResult",
    "solve_spectrum",
    "filter_physical",
    "eigenvalue_for",
    "DEFAULT_IMAG_TOL",
]

DEFAULT_IMAG_TOL = 1e-8
_DEDUP_RTOL = 1e-12


class EigenSolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectrumResult:
    """Negative real eigenvalues in ascending order; index ``nu`` is the position."""

    eigenvalues: np.ndarray
    raw_count: int
    discarded: dict
    imag_tol_used: float
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __getitem__(self, nu: int) -> float:
        return float(self.eigenvalues[nu])

    @property
    def n_infinite(self) -> int:
        return self.discarded.get("infinite", 0)

    @property
    def n_finite(self) -> int:
        return self.raw_count - self.n_infinite


def _dump_for_post_mortem(evp: DiscreteEVP) -> str:
    fd, path = tempfile.mkstemp(prefix="radschrod-failed-", suffix=".txt")
    with os.fdopen(fd, "w") as fh:
        write_matrix(evp.a, fh)
        if evp.b is not None:
            write_matrix(evp.b, fh)
    return path


def solve_spectrum(evp: DiscreteEVP) -> np.ndarray:
    """All eigenvalues of ``a`` (or of the pencil ``(a, b)``) as a complex array.

    Eigenvalues at infinity of a singular pencil are returned as
    ``complex(inf, 0)``; they are part of the result, not an error.
    """
    try:
        if evp.b is None:
            return scipy.linalg.eigvals(evp.a, check_finite=True).astype(complex)
        alpha, beta = scipy.linalg.eig(evp.a, evp.b, right=False, homogeneous_eigvals=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        path = _dump_for_post_mortem(evp)
        raise EigenSolverError(f"dense eigensolver failed ({exc}); matrices written to {path}") from exc
    size = evp.a.shape[0]
    infinite = np.abs(beta) <= size * np.finfo(float).eps * np.abs(alpha)
    out = np.empty(size, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[~infinite] = alpha[~infinite] / beta[~infinite]
    out[infinite] = complex(np.inf, 0.0)
    return out


def filter_physical(
    raw,
    imag_tol: float = DEFAULT_IMAG_TOL,
    *,
    min_lambda: Optional[float] = None,
    meta: Optional[dict] = None,
) -> SpectrumResult:
    """Keep the eigenvalues that approximate bound states.

    A value survives when ``|Im| <= imag_tol * max(1, |Re|)`` and ``Re < 0``
    (and ``Re >= min_lambda`` when given). Survivors are sorted ascending and
    near-duplicates (relative gap below 1e-12, e.g. conjugate-pair residue)
    are merged.
    """
    raw = np.asarray(raw, dtype=complex).ravel()
    discarded = {"infinite": 0, "nonreal": 0, "nonnegative": 0, "duplicate": 0, "below_min": 0}

    finite = np.isfinite(raw)
    discarded["infinite"] = int((~finite).sum())
    vals = raw[finite]
    real = np.abs(vals.imag) <= imag_tol * np.maximum(1.0, np.abs(vals.real))
    discarded["nonreal"] = int((~real).sum())
    vals = vals[real].real
    neg = vals < 0.0
    discarded["nonnegative"] = int((~neg).sum())
    vals = np.sort(vals[neg])
    if min_lambda is not None:
        keep = vals >= min_lambda
        discarded["below_min"] = int((~keep).sum())
        vals = vals[keep]

    kept: list[float] = []
    for v in vals:
        if kept and abs(v - kept[-1]) <= _DEDUP_RTOL * max(abs(v), abs(kept[-1])):
            discarded["duplicate"] += 1
            continue
        kept.append(float(v))

    eigenvalues = np.array(kept)
    eigenvalues.flags.writeable = False
    return SpectrumResult(
        eigenvalues=eigenvalues,
        raw_count=int(raw.size),
        discarded=discarded,
        imag_tol_used=float(imag_tol),
        meta=dict(meta or {}),
    )


def eigenvalue_for(n: int, ell: int, result: SpectrumResult) -> Optional[float]:
    """Approximation of ``lambda_n`` for angular momentum ``ell``, index ``n - ell - 1``."""
    if ell < 0 or n < ell + 1:
        raise ValueError(f"need n >= ell + 1, got n={n}, ell={ell}")
    nu = n - ell - 1
    if nu >= len(result):
        return None
    return result[nu]
