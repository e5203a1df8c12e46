import numpy as np
import pytest
from hypothesis import given, strategies as st

from radschrod.assembly import DiscreteEVP, assemble
from radschrod.eigen import EigenSolverError, SpectrumResult, eigenvalue_for, filter_physical, solve_spectrum
from radschrod.potential import PotentialSpec, exact_eigenvalue
from radschrod.solver import compute_spectrum
from radschrod.transform import RightBC, TransformKind, TransformedProblem, build_tds


def evp_from(a, b=None):
    a = np.asarray(a, dtype=float)
    return DiscreteEVP(a=a, b=None if b is None else np.asarray(b, dtype=float), n=a.shape[0], h=1.0, m=1, k=1,
                       node_of_row=tuple((i, 0) for i in range(a.shape[0])))


def laplacian_problem():
    const = lambda c: (lambda t: np.full((np.size(t), 1, 1), c))
    return TransformedProblem(
        m=1, a2=const(1.0), a1=const(0.0), a0=const(0.0), w=const(1.0), right_bc=RightBC.DIRICHLET,
        map_t_of_r=lambda r: r, map_r_of_t=lambda t: t, kind=TransformKind.TCII,
        potential=PotentialSpec.hydrogen(), ell=0,
    )


def test_diagonal_standard():
    raw = solve_spectrum(evp_from(np.diag([-1.0, -0.25])))
    np.testing.assert_allclose(np.sort(raw.real), [-1.0, -0.25])


def test_singular_pencil_reports_infinity():
    raw = solve_spectrum(evp_from(np.eye(2), np.diag([1.0, 0.0])))
    assert np.isinf(raw).sum() == 1
    assert raw[np.isfinite(raw)] == pytest.approx(1.0)


def test_solver_failure_is_reported():
    with pytest.raises(EigenSolverError, match="written to"):
        solve_spectrum(evp_from([[np.nan, 0.0], [0.0, 1.0]]))


def test_laplacian_closed_form():
    n = 50
    h = 1.0 / (n + 1)
    raw = solve_spectrum(assemble(laplacian_problem(), n, 1))
    got = np.sort(raw.real)
    exact = (2 - 2 * np.cos(np.arange(1, n + 1) * np.pi * h)) / h**2
    np.testing.assert_allclose(got, exact, rtol=1e-10)
    assert np.abs(raw.imag).max() == 0.0


def test_filter_constructed_input():
    res = filter_physical([-1 + 1e-15j, 0.3, -0.25])
    np.testing.assert_array_equal(res.eigenvalues, [-1.0, -0.25])
    assert res.discarded["nonnegative"] == 1
    assert res.raw_count == 3


def test_filter_all_positive_is_empty():
    res = filter_physical([0.5, 2.0, 3.0 + 1j])
    assert len(res) == 0 and res.raw_count == 3
    assert res.discarded == {"infinite": 0, "nonreal": 1, "nonnegative": 2, "duplicate": 0, "below_min": 0}


def test_filter_reasons_and_dedup():
    raw = [np.inf, -2.0 + 1e-3j, -2.0 - 1e-3j, -0.5 + 1e-14j, -0.5 - 1e-14j, -3.0, 0.0]
    res = filter_physical(raw, min_lambda=-2.5)
    np.testing.assert_array_equal(res.eigenvalues, [-0.5])
    assert res.discarded == {"infinite": 1, "nonreal": 2, "nonnegative": 1, "duplicate": 1, "below_min": 1}


def test_imag_tol_is_relative():
    assert len(filter_physical([-1e4 + 1e-5j], imag_tol=1e-8)) == 1
    assert len(filter_physical([-1e-4 + 1e-7j], imag_tol=1e-8)) == 0


@given(st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False), min_size=1, max_size=30))
def test_filter_idempotent(raw):
    once = filter_physical(raw)
    twice = filter_physical(once.eigenvalues.astype(complex)) if len(once) else once
    np.testing.assert_array_equal(once.eigenvalues, twice.eigenvalues)
    assert np.all(np.diff(once.eigenvalues) > 0)
    assert np.all(once.eigenvalues < 0)


def test_eigenvalue_for_indexing():
    res = SpectrumResult(eigenvalues=np.array([-1.0, -0.25, -0.1]), raw_count=5, discarded={}, imag_tol_used=1e-8)
    assert eigenvalue_for(1, 0, res) == -1.0
    assert eigenvalue_for(3, 1, res) == -0.25
    assert eigenvalue_for(9, 0, res) is None
    with pytest.raises(ValueError):
        eigenvalue_for(2, 2, res)


def test_hydrogen_ground_state_tcii():
    res = compute_spectrum(PotentialSpec.hydrogen(), 0, transform="tcii", order=8, n=200)
    assert res[0] == pytest.approx(-1.0, rel=1e-10)
    assert res.meta["xi"] == pytest.approx(1.35**8)


def test_hydrogen_ell3_n6():
    res = compute_spectrum(PotentialSpec.hydrogen(), 3, transform="tcii", order=8, n=200)
    assert eigenvalue_for(6, 3, res) == pytest.approx(-1 / 36, rel=1e-9)


def test_hulthen_third_level_order8_n400():
    p = PotentialSpec.hulthen(0.02)
    res = compute_spectrum(p, 0, transform="tcii", order=8, n=400)
    assert res[2] == pytest.approx(exact_eigenvalue(p, 3, 0), rel=1e-10)


def test_hulthen_closed_form_against_reference_solve():
    # the closed form is only trusted after agreeing with an order-8, N=1500 solve
    p = PotentialSpec.hulthen(0.02)
    res = compute_spectrum(p, 0, transform="tcii", order=8, n=1500)
    for n in range(1, 6):
        assert res[n - 1] == pytest.approx(exact_eigenvalue(p, n, 0), rel=1e-10)


@pytest.mark.parametrize("n, k", [(12, 1), (40, 2), (60, 4)])
def test_tds_pencil_two_infinite(n, k):
    raw = solve_spectrum(assemble(build_tds(PotentialSpec.hydrogen(), 0), n, k))
    assert np.isinf(raw).sum() == 2
    assert np.isfinite(raw).sum() == 2 * n


def test_over_screened_yukawa_has_no_bound_states():
    res = compute_spectrum(PotentialSpec.yukawa(5.0), 0, transform="tcii", order=4, n=60)
    assert len(res) == 0 and res.raw_count == 60
