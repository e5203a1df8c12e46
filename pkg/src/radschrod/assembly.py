"""Dense matrix assembly of the discretised eigenproblem.

Mesh: ``t_i = i h``, ``i = 0..N+1``, ``h = 1/(N+1)``. Unknowns are the
values at ``t_1..t_N`` (plus ``t_{N+1}`` for the coupled TDS closure),
ordered node-major: all ``m`` components of a node are adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from .stencil import StencilSet, stencil_set
from .transform import RightBC, TransformedProblem

__all__ = ["DiscreteEVP", "AssemblyError", "min_points", "build_diff_matrices", "assemble", "write_matrix", "read_matrix"]


class AssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteEVP:
    """The algebraic problem ``a x = lambda b x`` (``b is None``: standard)."""

    a: np.ndarray
    b: Optional[np.ndarray]
    n: int
    h: float
    m: int
    k: int
    node_of_row: tuple[tuple[int, int], ...]

    @property
    def is_generalized(self) -> bool:
        return self.b is not None

    @property
    def size(self) -> int:
        return self.a.shape[0]


def min_points(k: int) -> int:
    """Smallest interior point count for which every stencil fits."""
    return 2 * k + 1


def _place(row: np.ndarray, weights: np.ndarray, first_node: int) -> None:
    # column c of a hat matrix holds node c + 1; node 0 is dropped (v(0) = 0)
    for j, w in enumerate(weights):
        node = first_node + j
        if node >= 1:
            row[node - 1] = w


def build_diff_matrices(k: int, n: int, h: float, stencils: StencilSet | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Second- and first-derivative matrices, each ``n x (n+1)``.

    Row ``i - 1`` approximates the derivative at ``t_i``; column ``j - 1``
    multiplies ``v_j`` for ``j = 1..n+1``.
    """
    st = stencil_set(k) if stencils is None else stencils
    if st.k != k:
        raise AssemblyError(f"stencil set has k={st.k}, expected {k}")
    if n < min_points(k):
        raise AssemblyError(f"need N >= {min_points(k)} interior points for k={k}, got {n}")
    gamma = np.zeros((n, n + 1))
    beta = np.zeros((n, n + 1))
    for i in range(1, n + 1):
        if i < k:
            _place(gamma[i - 1], st.initial_second[i - 1], 0)
            _place(beta[i - 1], st.initial_first[i - 1], 0)
        elif i <= n + 1 - k:
            _place(gamma[i - 1], st.main_second, i - k)
            _place(beta[i - 1], st.main_first, i - k)
        else:
            row = i - (n + 2 - k)
            _place(gamma[i - 1], st.final_second[row], n - 2 * k)
            _place(beta[i - 1], st.final_first[row], n + 1 - 2 * k)
    return gamma / h**2, beta / h


def _eval_nodes(name: str, fn, t: np.ndarray, m: int) -> np.ndarray:
    vals = np.asarray(fn(t), dtype=float)
    if vals.shape != (t.size, m, m):
        raise AssemblyError(f"coefficient {name} returned shape {vals.shape}, expected {(t.size, m, m)}")
    bad = ~np.isfinite(vals).reshape(t.size, -1).all(axis=1)
    if bad.any():
        i = int(np.argmax(bad)) + 1
        raise AssemblyError(f"coefficient {name} is not finite at node i={i} (t={t[i - 1]!r})")
    return vals


def assemble(tp: TransformedProblem, n: int, stencils: StencilSet | int) -> DiscreteEVP:
    """Assemble the dense matrix (pencil) for ``tp`` on ``n`` interior points.

    ``stencils`` may be a :class:`StencilSet` or the half-width ``k``.
    """
    st = stencil_set(stencils) if isinstance(stencils, (int, np.integer)) else stencils
    k, m = st.k, tp.m
    if m not in (1, 2):
        raise AssemblyError(f"unsupported system size m={m}")
    h = 1.0 / (n + 1)
    gamma, beta = build_diff_matrices(k, n, h, st)
    t = np.arange(1, n + 1) * h

    a2 = _eval_nodes("A2", tp.a2, t, m)
    a1 = _eval_nodes("A1", tp.a1, t, m)
    a0 = _eval_nodes("A0", tp.a0, t, m)
    w = _eval_nodes("W", tp.w, t, m)

    # block (i, j) = -A2(t_i) gamma[i, j] + A1(t_i) beta[i, j], plus A0(t_i) on j = i
    blocks = -np.einsum("iab,ij->iajb", a2, gamma) + np.einsum("iab,ij->iajb", a1, beta)
    idx = np.arange(n)
    blocks[idx, :, idx, :] += a0
    r_hat = blocks.reshape(n * m, (n + 1) * m)

    weight = np.zeros((n, m, n, m))
    weight[idx, :, idx, :] = w
    weight = weight.reshape(n * m, n * m)
    identity_weight = np.array_equal(weight, np.eye(n * m))

    if tp.right_bc is RightBC.DIRICHLET:
        a = np.ascontiguousarray(r_hat[:, : n * m])
        b = None if identity_weight else weight
        nodes = tuple((i, c) for i in range(1, n + 1) for c in range(m))
    elif tp.right_bc is RightBC.COUPLED_TDS:
        if m != 2:
            raise AssemblyError("coupled TDS closure needs a 2-component system")
        size = 2 * (n + 1)
        a = np.zeros((size, size))
        a[: 2 * n] = r_hat
        # continuity u(1) = z(1)
        a[2 * n, 2 * n] = 1.0
        a[2 * n, 2 * n + 1] = -1.0
        # u'(1) + z'(1) = 0 with the one-sided formula ending at t_{N+1}
        for s in range(2 * k + 1):
            node = n + 1 - s
            if node >= 1:
                a[2 * n + 1, 2 * (node - 1)] = st.bdf[2 * k - s]
                a[2 * n + 1, 2 * (node - 1) + 1] = st.bdf[2 * k - s]
        b = np.zeros((size, size))
        b[: 2 * n, : 2 * n] = weight
        nodes = tuple((i, c) for i in range(1, n + 2) for c in range(2))
    else:
        raise AssemblyError(f"unknown right boundary treatment {tp.right_bc!r}")

    a.flags.writeable = False
    if b is not None:
        b.flags.writeable = False
    return DiscreteEVP(a=a, b=b, n=n, h=h, m=m, k=k, node_of_row=nodes)


def write_matrix(mat: np.ndarray, fh: TextIO) -> None:
    """Plain-text dump: ``rows cols`` header, then one row per line, 17 significant digits."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    fh.write(f"{mat.shape[0]} {mat.shape[1]}\n")
    for row in mat:
        fh.write(" ".join(f"{x:.17g}" for x in row))
        fh.write("\n")


def read_matrix(fh: TextIO) -> np.ndarray:
    rows, cols = (int(x) for x in fh.readline().split())
    data = np.array(fh.read().split(), dtype=float)
    if data.size != rows * cols:
        raise AssemblyError(f"matrix dump holds {data.size} entries, header says {rows}x{cols}")
    return data.reshape(rows, cols)
