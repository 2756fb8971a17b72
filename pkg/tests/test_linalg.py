import numpy as np
import pytest

from lumpgap import linalg
from lumpgap.errors import DomainError, LumpGapError, NumericalFailure, ShapeError
from lumpgap.linalg import SymMatrix, determinant, eigen_symmetric, multiply


def _random_symmetric(rng, n):
    x = rng.normal(size=(n, n))
    return (x + x.T) / 2.0


def test_symmatrix_rejects_non_square():
    with pytest.raises(ShapeError):
        SymMatrix(np.zeros((2, 3)))


def test_symmatrix_rejects_asymmetry():
    with pytest.raises(DomainError):
        SymMatrix(np.array([[1.0, 0.5], [0.4, 1.0]]))


def test_symmatrix_rejects_non_finite_entries():
    for bad in (np.nan, np.inf, -np.inf):
        with pytest.raises(DomainError) as info:
            SymMatrix(np.array([[bad]]))
        assert isinstance(info.value, LumpGapError)


def test_symmatrix_symmetrizes_tiny_asymmetry():
    m = SymMatrix(np.array([[1.0, 0.5 + 1e-14], [0.5, 1.0]]))
    assert m[0, 1] == m[1, 0]
    assert m.dim == 2


def test_symmatrix_is_read_only():
    m = SymMatrix.identity(3)
    with pytest.raises(ValueError):
        m.entries[0, 0] = 2.0


def test_multiply_identity_and_symmetric_product():
    a = SymMatrix(np.array([[2.0, 1.0], [1.0, 3.0]]))
    product = multiply(a, a)
    assert isinstance(product, SymMatrix)
    np.testing.assert_allclose(product.entries, np.array([[5.0, 5.0], [5.0, 10.0]]))
    np.testing.assert_allclose(multiply(SymMatrix.identity(2), a).entries, a.entries)


def test_multiply_rectangular_returns_array():
    h = np.ones((3, 1))
    out = multiply(SymMatrix.identity(3), h)
    assert isinstance(out, np.ndarray)
    assert out.shape == (3, 1)


def test_multiply_shape_mismatch():
    with pytest.raises(ShapeError):
        multiply(SymMatrix.identity(2), SymMatrix.identity(3))


def test_determinant_matches_numpy(rng):
    for n in (1, 2, 3, 4, 6):
        for _ in range(20):
            a = _random_symmetric(rng, n)
            assert determinant(a) == pytest.approx(np.linalg.det(a), abs=1e-10)


def test_determinant_is_product_of_eigenvalues(rng):
    for n in (2, 3, 4, 5, 6):
        for _ in range(20):
            a = _random_symmetric(rng, n)
            product = float(np.prod(eigen_symmetric(a).eigenvalues))
            assert determinant(a) == pytest.approx(product, rel=1e-8, abs=1e-12)


def test_determinant_identity_and_singular():
    assert determinant(SymMatrix.identity(3)) == 1.0
    assert determinant(np.ones((3, 3))) == 0.0


def test_determinant_requires_square():
    with pytest.raises(ShapeError):
        determinant(np.zeros((2, 3)))


def test_eigen_known_two_by_two():
    eig = eigen_symmetric(SymMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])))
    np.testing.assert_allclose(eig.eigenvalues, [3.0, 1.0], atol=1e-13)


def test_eigen_diagonal_needs_no_sweeps():
    eig = eigen_symmetric(np.diag([1.0, 3.0, 2.0]))
    assert eig.sweeps == 0
    np.testing.assert_array_equal(eig.eigenvalues, [3.0, 2.0, 1.0])


def test_eigen_random_against_numpy(rng):
    for n in (2, 3, 6, 9):
        for _ in range(25):
            a = _random_symmetric(rng, n)
            eig = eigen_symmetric(a)
            np.testing.assert_allclose(eig.eigenvalues, np.sort(np.linalg.eigvalsh(a))[::-1], atol=1e-10)
            assert np.all(np.diff(eig.eigenvalues) <= 0.0)
            np.testing.assert_allclose(eig.eigenvectors.T @ eig.eigenvectors, np.eye(n), atol=1e-10)
            np.testing.assert_allclose(eig.reconstruct(), a, atol=1e-10)
            assert eig.sweeps <= 100


def test_eigen_reports_non_convergence(monkeypatch):
    monkeypatch.setattr(linalg, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(NumericalFailure):
        eigen_symmetric(np.array([[1.0, 0.5], [0.5, 1.0]]))
