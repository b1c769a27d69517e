import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import eigh_tridiagonal

from dominochain.tridiag import TridiagSpec, analytic_spectrum, det_recursion, verify_eigenpair


def dense_matrix(spec: TridiagSpec) -> np.ndarray:
    m = np.diag(np.full(spec.dim, spec.diag))
    idx = np.arange(spec.dim - 1)
    m[idx, idx + 1] = spec.offdiag
    m[idx + 1, idx] = spec.offdiag
    return m


def test_spec_validation():
    with pytest.raises(ValueError):
        TridiagSpec(dim=0, diag=0.0, offdiag=1.0)
    with pytest.raises(ValueError):
        TridiagSpec(dim=3, diag=np.nan, offdiag=1.0)
    with pytest.raises(ValueError):
        TridiagSpec(dim=3, diag=0.0, offdiag=np.inf)


def test_det_dim1():
    assert det_recursion(TridiagSpec(dim=1, diag=2.0, offdiag=7.0), 0.0) == 2.0


def test_det_dim2():
    # [[0, 1], [1, 0]] has determinant -1
    assert det_recursion(TridiagSpec(dim=2, diag=0.0, offdiag=1.0), 0.0) == -1.0


def test_det_vanishes_at_analytic_eigenvalue():
    spec = TridiagSpec(dim=5, diag=0.0, offdiag=1.0)
    lam = -2.0 * np.cos(np.pi / 6.0)
    assert abs(det_recursion(spec, lam)) < 1e-10


@pytest.mark.parametrize("dim", [1, 2, 3, 5, 8])
def test_det_matches_numpy(dim):
    rng = np.random.default_rng(100 + dim)
    for _ in range(5):
        spec = TridiagSpec(dim=dim, diag=rng.normal(), offdiag=rng.normal())
        lam = rng.normal()
        expected = np.linalg.det(dense_matrix(spec) - lam * np.eye(dim))
        assert_allclose(det_recursion(spec, lam), expected, rtol=1e-10, atol=1e-12)


def test_det_rescaled_accumulation():
    # growth ~2.6^600 forces the internal power-of-two rescaling; check the
    # reconstructed value against LU-based slogdet
    spec = TridiagSpec(dim=600, diag=0.0, offdiag=1.0)
    det = det_recursion(spec, 3.0)
    sign, logabs = np.linalg.slogdet(dense_matrix(spec) - 3.0 * np.eye(600))
    assert np.sign(det) == sign
    assert_allclose(np.log(abs(det)), logabs, rtol=1e-12)


@pytest.mark.parametrize(
    "dim,diag,offdiag",
    [(50, 0.0, 0.5), (120, 1.0, -0.7), (200, -2.0, 2.0)],
)
def test_det_root_residual_scaled(dim, diag, offdiag):
    spec = TridiagSpec(dim=dim, diag=diag, offdiag=offdiag)
    lambdas, _ = analytic_spectrum(spec)
    for lam in lambdas:
        det, scale = det_recursion(spec, lam, return_scale=True)
        assert abs(det) <= 1e-8 * max(1.0, scale)


def test_spectrum_dim1():
    lambdas, vectors = analytic_spectrum(TridiagSpec(dim=1, diag=3.0, offdiag=5.0))
    assert_allclose(lambdas, [3.0], atol=1e-15)  # cos(pi/2) = 0
    assert_allclose(np.abs(vectors), [[1.0]], atol=1e-15)


def test_spectrum_dim3():
    # roots of lam**3 - 2*lam for the 3x3 zero-diagonal case
    lambdas, _ = analytic_spectrum(TridiagSpec(dim=3, diag=0.0, offdiag=1.0))
    assert_allclose(np.sort(lambdas), [-np.sqrt(2.0), 0.0, np.sqrt(2.0)], atol=1e-15)


def test_spectrum_dim2():
    lambdas, _ = analytic_spectrum(TridiagSpec(dim=2, diag=0.0, offdiag=0.5))
    assert_allclose(np.sort(lambdas), [-0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("dim,diag,offdiag", [(6, 0.4, -1.3), (11, -2.0, 0.9)])
def test_three_term_relations_and_norms(dim, diag, offdiag):
    spec = TridiagSpec(dim=dim, diag=diag, offdiag=offdiag)
    lambdas, vectors = analytic_spectrum(spec)
    theta = np.arange(1, dim + 1) * np.pi / (dim + 1)
    for p in range(dim):
        v = vectors[:, p]
        assert_allclose(np.linalg.norm(v), 1.0, atol=1e-14)
        # interior recurrence v[k+1] + v[k-1] = -2*cos(theta_p)*v[k]
        if dim >= 3:
            assert_allclose(
                v[2:] + v[:-2], -2.0 * np.cos(theta[p]) * v[1:-1], atol=1e-13
            )
        # boundary rows of (M - lam*I) v = 0
        assert_allclose(diag * v[0] + offdiag * v[1], lambdas[p] * v[0], atol=1e-13)
        assert_allclose(diag * v[-1] + offdiag * v[-2], lambdas[p] * v[-1], atol=1e-13)


def test_eigenvalue_ordering():
    # lam_p = diag - 2*offdiag*cos(p*pi/(dim+1)) rises with p for offdiag > 0
    inc, _ = analytic_spectrum(TridiagSpec(dim=9, diag=0.0, offdiag=1.5))
    assert np.all(np.diff(inc) > 0)
    dec, _ = analytic_spectrum(TridiagSpec(dim=9, diag=0.0, offdiag=-1.5))
    assert np.all(np.diff(dec) < 0)
    flat, _ = analytic_spectrum(TridiagSpec(dim=9, diag=2.0, offdiag=0.0))
    assert np.all(flat == 2.0)


def test_degenerate_offdiag_zero_keeps_valid_eigenbasis():
    spec = TridiagSpec(dim=10, diag=1.0, offdiag=0.0)
    lambdas, vectors = analytic_spectrum(spec)
    assert np.all(lambdas == 1.0)
    assert_allclose(vectors.T @ vectors, np.eye(10), atol=1e-13)
    assert verify_eigenpair(spec, 3) == 0.0


def test_verify_eigenpair_examples():
    assert verify_eigenpair(TridiagSpec(dim=2, diag=0.0, offdiag=0.5), 1) < 1e-14
    assert verify_eigenpair(TridiagSpec(dim=99, diag=0.0, offdiag=0.5), 50) < 1e-10


def test_verify_eigenpair_range():
    spec = TridiagSpec(dim=4, diag=0.0, offdiag=1.0)
    with pytest.raises(ValueError):
        verify_eigenpair(spec, 0)
    with pytest.raises(ValueError):
        verify_eigenpair(spec, 5)


@pytest.mark.parametrize("dim", [2, 7, 50, 200])
def test_matches_numeric_eigensolver(dim):
    spec = TridiagSpec(dim=dim, diag=0.3, offdiag=-0.8)
    lambdas, vectors = analytic_spectrum(spec)
    numeric, _ = eigh_tridiagonal(
        np.full(dim, spec.diag), np.full(dim - 1, spec.offdiag)
    )
    assert_allclose(np.sort(lambdas), numeric, atol=1e-10)
    m = dense_matrix(spec)
    residual = m @ vectors - vectors * lambdas
    assert np.max(np.abs(residual)) < 1e-10
