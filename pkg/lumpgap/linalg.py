# lumpgap/linalg.py
"""
Small dense symmetric linear algebra.

Everything here operates on matrices of dimension <= 16 (in practice 3 or 6),
so clarity wins over speed: a cyclic Jacobi eigensolver, an explicit cofactor
determinant at dimension 3, and plain numpy products.
"""
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .config import JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL, SYMMETRY_TOL
from .errors import DomainError, NumericalFailure, ShapeError


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense real symmetric matrix, exactly symmetric after construction."""
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeError(f"symmetric matrix must be square, got shape {a.shape}", a.shape)
        if a.shape[0] < 1:
            raise ShapeError("symmetric matrix must have dim >= 1", a.shape)
        if not np.all(np.isfinite(a)):
            raise DomainError("symmetric matrix entries must be finite")
        asym = float(np.max(np.abs(a - a.T)))
        if asym > SYMMETRY_TOL:
            raise DomainError(f"matrix is not symmetric: max |m - m^T| = {asym:.3e}")
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def identity(cls, dim: int) -> "SymMatrix":
        return cls(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def to_list(self) -> List[List[float]]:
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues sorted descending; column j of `eigenvectors` pairs with eigenvalue j."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return v @ np.diag(self.eigenvalues) @ v.T


MatrixLike = Union[SymMatrix, np.ndarray]


def _as_array(m: MatrixLike) -> np.ndarray:
    a = m.entries if isinstance(m, SymMatrix) else np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {a.shape}", a.shape)
    return a


def multiply(a: MatrixLike, b: MatrixLike) -> MatrixLike:
    """
    Matrix product a·b.

    Two symmetric operands whose product is symmetric (e.g. P·P) give back a
    re-symmetrized SymMatrix; every other combination returns a plain ndarray.
    """
    x, y = _as_array(a), _as_array(b)
    if x.shape[1] != y.shape[0]:
        raise ShapeError(f"inner dimensions disagree: {x.shape} x {y.shape}", x.shape, y.shape)
    product = x @ y
    if isinstance(a, SymMatrix) and isinstance(b, SymMatrix):
        if float(np.max(np.abs(product - product.T))) <= SYMMETRY_TOL:
            return SymMatrix(product)
    return product


def determinant(m: MatrixLike) -> float:
    """Determinant; explicit cofactor expansion at dim 3, pivoted LU otherwise."""
    a = _as_array(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"determinant needs a square matrix, got {a.shape}", a.shape)
    if a.shape[0] == 3:
        return float(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    return float(np.linalg.det(a))


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """One Jacobi rotation annihilating a[p, q], applied in place to a and v."""
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    sign = 1.0 if theta >= 0.0 else -1.0
    t = sign / (abs(theta) + np.hypot(theta, 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def eigen_symmetric(m: MatrixLike) -> EigenDecomposition:
    """
    Full eigendecomposition by cyclic Jacobi sweeps.

    Sweeps continue until the off-diagonal Frobenius norm drops below
    JACOBI_OFF_TOL. Raises NumericalFailure after JACOBI_MAX_SWEEPS sweeps.
    """
    sym = m if isinstance(m, SymMatrix) else SymMatrix(m)
    a = np.array(sym.entries, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)

    sweeps = 0
    while _off_diagonal_norm(a) >= JACOBI_OFF_TOL:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise NumericalFailure(
                f"Jacobi did not converge after {JACOBI_MAX_SWEEPS} sweeps "
                f"(off-diagonal norm {_off_diagonal_norm(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenDecomposition(eigenvalues=values, eigenvectors=vectors, sweeps=sweeps)
