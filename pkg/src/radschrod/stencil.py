"""Finite-difference coefficient tables for the (2k)-step schemes.

All tables are computed at unit spacing from the polynomial order
conditions, solved in exact rational arithmetic and then rounded once to
double precision. The ``1/h`` and ``1/h**2`` scalings belong to the caller.

Layout for a given half-width ``k`` (scheme order ``p = 2k``):

* main formulas: centred ``2k+1``-point stencils, target at the middle node;
* initial formulas: row ``i - 1`` targets node ``t_i`` (``i = 1..k-1``) and
  spans ``t_0..t_2k`` (first derivative) or ``t_0..t_{2k+1}`` (second);
* final formulas: reflections of the initial ones;
* one-sided formula: first derivative at the last node of a ``2k+1``-point
  stencil (the BDF differentiation weights).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np

__all__ = [
    "MAX_HALF_WIDTH",
    "MAX_BDF_HALF_WIDTH",
    "StencilError",
    "StencilSet",
    "fd_weights",
    "derive_main",
    "derive_additional",
    "derive_bdf",
    "one_sided_first",
    "stencil_set",
]

MAX_HALF_WIDTH = 6
MAX_BDF_HALF_WIDTH = 3


class StencilError(ValueError):
    pass


def _check_k(k: int, lo: int = 1, hi: int = MAX_HALF_WIDTH) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise StencilError(f"half-width k must be an integer, got {k!r}")
    if not lo <= k <= hi:
        raise StencilError(f"half-width k={k} outside supported range [{lo}, {hi}]")


def _solve_exact(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    # Gauss-Jordan with partial pivoting on nonzero entries; exact, so any
    # nonzero pivot will do.
    n = len(rhs)
    a = [row[:] + [b] for row, b in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise StencilError("order-condition system is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def _fd_weights_cached(offsets: tuple[int, ...], deriv: int) -> tuple[Fraction, ...]:
    n = len(offsets)
    mat = [[Fraction(x) ** q for x in offsets] for q in range(n)]
    rhs = [Fraction(factorial(deriv)) if q == deriv else Fraction(0) for q in range(n)]
    return tuple(_solve_exact(mat, rhs))


def fd_weights(offsets: Sequence[int], deriv: int) -> tuple[Fraction, ...]:
    """Exact weights ``w`` with ``sum(w[j] * f(x0 + offsets[j])) ~ f^(deriv)(x0)``.

    The weights make the formula exact for all polynomials of degree
    ``< len(offsets)`` at unit spacing.

    >>> fd_weights([-1, 0, 1], 2)
    (Fraction(1, 1), Fraction(-2, 1), Fraction(1, 1))
    """
    offsets = tuple(int(x) for x in offsets)
    if len(set(offsets)) != len(offsets):
        raise StencilError("stencil offsets must be distinct")
    if not 0 <= deriv < len(offsets):
        raise StencilError(f"cannot approximate derivative {deriv} with {len(offsets)} points")
    return _fd_weights_cached(offsets, deriv)


def _as_array(weights: Sequence[Fraction]) -> np.ndarray:
    arr = np.array([float(w) for w in weights])
    arr.flags.writeable = False
    return arr


def _as_table(rows: list[Sequence[Fraction]], width: int) -> np.ndarray:
    tab = np.array([[float(w) for w in row] for row in rows]).reshape(len(rows), width)
    tab.flags.writeable = False
    return tab


def derive_main(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Centred first- and second-derivative weights of order ``2k``.

    Returns ``(main_first, main_second)``, both of length ``2k + 1``.
    """
    _check_k(k)
    offsets = range(-k, k + 1)
    first = fd_weights(offsets, 1)
    second = fd_weights(offsets, 2)
    # Symmetry is a consequence of the order conditions, not imposed.
    for j in range(k + 1):
        if first[j] != -first[2 * k - j] or second[j] != second[2 * k - j]:
            raise StencilError(f"main formulas for k={k} are not symmetric")
    return _as_array(first), _as_array(second)


def _initial_rows(k: int) -> tuple[list[tuple[Fraction, ...]], list[tuple[Fraction, ...]]]:
    first = [fd_weights([j - i for j in range(2 * k + 1)], 1) for i in range(1, k)]
    second = [fd_weights([j - i for j in range(2 * k + 2)], 2) for i in range(1, k)]
    return first, second


def derive_additional(k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Initial and final additional formulas for the nodes next to the ends.

    Returns ``(initial_first, initial_second, final_first, final_second)``
    with shapes ``(k-1, 2k+1)``, ``(k-1, 2k+2)``, ``(k-1, 2k+1)`` and
    ``(k-1, 2k+2)``. For ``k = 1`` all four tables are empty.

    Final row ``i`` is the reflection of initial row ``k - 2 - i``, so the
    last final row targets the node just before the right boundary node.
    First-derivative rows change sign under reflection.
    """
    _check_k(k)
    init_first, init_second = _initial_rows(k)
    fin_first = [tuple(-w for w in reversed(row)) for row in reversed(init_first)]
    fin_second = [tuple(reversed(row)) for row in reversed(init_second)]
    return (
        _as_table(init_first, 2 * k + 1),
        _as_table(init_second, 2 * k + 2),
        _as_table(fin_first, 2 * k + 1),
        _as_table(fin_second, 2 * k + 2),
    )


def one_sided_first(k: int) -> np.ndarray:
    """First-derivative weights at the last node of a ``2k + 1``-point stencil."""
    _check_k(k)
    return _as_array(fd_weights(range(-2 * k, 1), 1))


def derive_bdf(k: int) -> np.ndarray:
    """Classical ``2k``-step BDF differentiation weights, ``1 <= k <= 3``.

    >>> derive_bdf(1).tolist()
    [0.5, -2.0, 1.5]
    """
    _check_k(k, hi=MAX_BDF_HALF_WIDTH)
    return one_sided_first(k)


@dataclass(frozen=True)
class StencilSet:
    """Every coefficient table of the order-``2k`` scheme family."""

    k: int
    main_first: np.ndarray
    main_second: np.ndarray
    initial_first: np.ndarray
    initial_second: np.ndarray
    final_first: np.ndarray
    final_second: np.ndarray
    bdf: np.ndarray

    @property
    def order(self) -> int:
        return 2 * self.k

    def tables(self) -> dict[str, np.ndarray]:
        """Name -> 2-D table view, used for dumping."""
        return {
            "main_first": self.main_first[None, :],
            "main_second": self.main_second[None, :],
            "initial_first": self.initial_first,
            "initial_second": self.initial_second,
            "final_first": self.final_first,
            "final_second": self.final_second,
            "bdf": self.bdf[None, :],
        }


@lru_cache(maxsize=None)
def stencil_set(k: int) -> StencilSet:
    """Build (and cache) the full :class:`StencilSet` for half-width ``k``.

    The boundary one-sided formula uses the same ``k`` as the interior
    scheme, also beyond the classical BDF range.
    """
    main_first, main_second = derive_main(k)
    init_first, init_second, fin_first, fin_second = derive_additional(k)
    return StencilSet(
        k=k,
        main_first=main_first,
        main_second=main_second,
        initial_first=init_first,
        initial_second=init_second,
        final_first=fin_first,
        final_second=fin_second,
        bdf=one_sided_first(k),
    )
