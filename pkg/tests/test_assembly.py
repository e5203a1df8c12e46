import dataclasses
import io
from fractions import Fraction

import numpy as np
import pytest

from radschrod.assembly import AssemblyError, assemble, build_diff_matrices, read_matrix, write_matrix
from radschrod.potential import PotentialKind, PotentialSpec
from radschrod.solver import observed_order
from radschrod.stencil import stencil_set
from radschrod.transform import RightBC, build_atcii, build_tcii, build_tds

H = PotentialSpec.hydrogen()


def test_order4_rows_match_display():
    n = 9
    h = 1.0 / (n + 1)
    gamma, beta = build_diff_matrices(2, n, h)
    assert gamma.shape == beta.shape == (n, n + 1)
    np.testing.assert_allclose(gamma[0] * 12 * h * h, [-15, -4, 14, -6, 1, 0, 0, 0, 0, 0], atol=1e-11)
    np.testing.assert_allclose(gamma[-1] * 12 * h * h, [0, 0, 0, 0, 1, -6, 14, -4, -15, 10], atol=1e-11)
    np.testing.assert_allclose(beta[0] * 12 * h, [-10, 18, -6, 1, 0, 0, 0, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(beta[4] * 12 * h, [0, 0, 1, -8, 0, 8, -1, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(beta[-1] * 12 * h, [0, 0, 0, 0, 0, -1, 6, -18, 10, 3], atol=1e-12)


def test_k1_n3_pattern():
    h = 0.25
    gamma, beta = build_diff_matrices(1, 3, h)
    np.testing.assert_array_equal(gamma * h * h, [[-2, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 1]])
    np.testing.assert_array_equal(beta * 2 * h, [[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 1]])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_row_sums_with_t0_column(k):
    n = 30
    h = 1.0 / (n + 1)
    st = stencil_set(k)
    gamma, beta = build_diff_matrices(k, n, h)
    # the dropped t0 column carries what is missing from each row sum
    t0_second = np.zeros(n)
    t0_first = np.zeros(n)
    t0_second[: k - 1] = st.initial_second[:, 0]
    t0_first[: k - 1] = st.initial_first[:, 0]
    t0_second[k - 1] = st.main_second[0]
    t0_first[k - 1] = st.main_first[0]
    scale2, scale1 = np.abs(gamma).max(), np.abs(beta).max()
    assert np.abs(gamma.sum(axis=1) + t0_second / h**2).max() <= 1e-12 * scale2
    assert np.abs(beta.sum(axis=1) + t0_first / h).max() <= 1e-12 * scale1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_differentiates_quadratics(k):
    n = 40
    h = 1.0 / (n + 1)
    gamma, beta = build_diff_matrices(k, n, h)
    t = np.arange(1, n + 2) * h
    ti = t[:-1]
    np.testing.assert_allclose(gamma @ t**2, 2.0, atol=1e-8)
    np.testing.assert_allclose(beta @ t**2, 2 * ti, atol=1e-8)


def test_rejects_too_few_points():
    with pytest.raises(AssemblyError):
        build_diff_matrices(2, 4, 0.2)
    with pytest.raises(AssemblyError):
        assemble(build_tcii(H, 0, 1.0), 6, 3)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_halving_h_scales_entries(k):
    n = 20
    g1, b1 = build_diff_matrices(k, n, 0.05)
    g2, b2 = build_diff_matrices(k, n, 0.025)
    np.testing.assert_array_equal(g2, 4 * g1)
    np.testing.assert_array_equal(b2, 2 * b1)


def test_tcii_k1_n3_hand_assembly():
    # xi = 1, ell = 0, hydrogen, h = 1/4, nodes t = 1/4, 1/2, 3/4; exact rationals
    h = Fraction(1, 4)
    rows = []
    for i in (1, 2, 3):
        t = i * h
        a2 = (1 - t) ** 4
        a1 = 2 * (1 - t) ** 3
        a0 = -2 * (1 - t) / t  # V(r) with r = t / (1 - t)
        row = [Fraction(0)] * 3
        for j, (g, b) in zip((i - 1, i, i + 1), ((1, -Fraction(1, 2)), (-2, 0), (1, Fraction(1, 2)))):
            if 1 <= j <= 3:
                row[j - 1] += -a2 * g / h**2 + a1 * b / h
        row[i - 1] += a0
        rows.append([float(x) for x in row])
    evp = assemble(build_tcii(H, 0, 1.0), 3, 1)
    assert evp.a.shape == (3, 3) and evp.b is None
    np.testing.assert_allclose(evp.a, rows, rtol=1e-14)


@pytest.mark.parametrize("build", [lambda: build_tcii(H, 2, 5.0), lambda: build_atcii(H, 2)])
def test_dirichlet_closure_is_standard_problem(build):
    evp = assemble(build(), 25, 2)
    assert evp.a.shape == (25, 25)
    assert evp.b is None and not evp.is_generalized
    assert evp.node_of_row[0] == (1, 0) and evp.node_of_row[-1] == (25, 0)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_tds_pencil_structure(k):
    n = 20
    evp = assemble(build_tds(H, 1), n, k)
    assert evp.a.shape == evp.b.shape == (2 * n + 2, 2 * n + 2)
    np.testing.assert_array_equal(evp.b, np.diag([1.0] * (2 * n) + [0.0, 0.0]))
    cont = np.zeros(2 * n + 2)
    cont[2 * n], cont[2 * n + 1] = 1, -1
    np.testing.assert_array_equal(evp.a[2 * n], cont)
    bdf = stencil_set(k).bdf
    row = evp.a[2 * n + 1]
    for s in range(2 * k + 1):
        node = n + 1 - s
        assert row[2 * (node - 1)] == row[2 * (node - 1) + 1] == bdf[2 * k - s]
    assert np.count_nonzero(row) == 2 * (2 * k + 1)


def test_tds_node_ordering_is_node_major():
    evp = assemble(build_tds(H, 0), 10, 1)
    assert evp.node_of_row[:4] == ((1, 0), (1, 1), (2, 0), (2, 1))
    assert evp.node_of_row[-2:] == ((11, 0), (11, 1))


def test_component_swap_is_a_permutation_similarity():
    tp = dataclasses.replace(build_tds(PotentialSpec.yukawa(0.1), 1), right_bc=RightBC.DIRICHLET)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])

    def swapped(ev):
        return lambda t: swap @ ev(t) @ swap

    tp_swapped = dataclasses.replace(tp, a2=swapped(tp.a2), a1=swapped(tp.a1), a0=swapped(tp.a0), w=swapped(tp.w))
    n = 15
    a = assemble(tp, n, 2).a
    b = assemble(tp_swapped, n, 2).a
    perm = np.arange(2 * n).reshape(n, 2)[:, ::-1].ravel()
    np.testing.assert_array_equal(a[np.ix_(perm, perm)], b)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_manufactured_solution_order(k):
    tp = build_tcii(H, 1, 2.0)
    v = lambda t: t * (1 - t) * np.exp(t)
    dv = lambda t: np.exp(t) * (1 - t - t * t)
    d2v = lambda t: np.exp(t) * (-3 * t - t * t)
    hs, errs = [], []
    for n in (25, 50, 100):
        evp = assemble(tp, n, k)
        t = np.arange(1, n + 1) / (n + 1)
        exact = -tp.a2(t)[:, 0, 0] * d2v(t) + tp.a1(t)[:, 0, 0] * dv(t) + tp.a0(t)[:, 0, 0] * v(t)
        hs.append(evp.h)
        errs.append(np.abs(evp.a @ v(t) - exact).max())
    assert observed_order(hs, errs) >= 2 * k - 0.5


def test_nonfinite_coefficient_names_node():
    bad = PotentialSpec(PotentialKind.CUSTOM, custom_eval=lambda r: np.where(r > 1.0, np.nan, -1.0 / r), custom_origin_limit=-1.0)
    with pytest.raises(AssemblyError, match="node i="):
        assemble(build_tcii(bad, 0, 1.0), 9, 1)


def test_custom_potential_equal_to_hydrogen_gives_same_matrix():
    custom = PotentialSpec(PotentialKind.CUSTOM, custom_eval=lambda r: -2.0 / r, custom_origin_limit=-2.0)
    a = assemble(build_tcii(custom, 1, 3.0), 30, 2).a
    b = assemble(build_tcii(H, 1, 3.0), 30, 2).a
    np.testing.assert_array_equal(a, b)


def test_assembled_matrix_is_read_only():
    evp = assemble(build_tcii(H, 0, 1.0), 9, 2)
    with pytest.raises(ValueError):
        evp.a[0, 0] = 0.0


def test_matrix_dump_round_trip():
    evp = assemble(build_tds(H, 2), 12, 2)
    buf = io.StringIO()
    write_matrix(evp.a, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "26 26"
    back = read_matrix(io.StringIO(text))
    np.testing.assert_array_equal(back, evp.a)
