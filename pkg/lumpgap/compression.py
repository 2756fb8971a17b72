# lumpgap/compression.py
"""
Partition-constrained compressions Q_A(T) = H_A^T T H_A and the relaxed benchmark.

Dimension-generic: any n-state operator and any k-cell partition.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .config import PSD_TOL
from .errors import DomainError, PartitionArgumentError, ShapeError
from .linalg import SymMatrix, determinant, eigen_symmetric, multiply
from .partitions import SetPartition


@dataclass(frozen=True, eq=False)
class IndicatorFrame:
    """n x k frame whose column alpha is 1_{A_alpha} / sqrt(|A_alpha|)."""
    n: int
    cells: Tuple[Tuple[int, ...], ...]
    matrix: np.ndarray

    @property
    def k(self) -> int:
        return len(self.cells)

    def gram(self) -> np.ndarray:
        return self.matrix.T @ self.matrix


def frame_from_cells(cells: Sequence[Sequence[int]], n: int) -> IndicatorFrame:
    """Frame with columns in the given cell order (not necessarily canonical)."""
    cells = tuple(tuple(sorted(int(s) for s in cell)) for cell in cells)
    covered = sorted(s for cell in cells for s in cell)
    if covered != list(range(n)) or any(not cell for cell in cells):
        raise PartitionArgumentError(f"cells {cells} do not partition {{0..{n - 1}}}")
    h = np.zeros((n, len(cells)))
    for alpha, cell in enumerate(cells):
        h[list(cell), alpha] = 1.0 / np.sqrt(len(cell))
    h.setflags(write=False)
    return IndicatorFrame(n=n, cells=cells, matrix=h)


def build_frame(p: SetPartition, n: int) -> IndicatorFrame:
    if p.n != n:
        raise ShapeError(f"partition covers {p.n} states, frame needs {n}", (p.n,), (n,))
    return frame_from_cells(p.cells, n)


def compress(T: SymMatrix, H: IndicatorFrame) -> SymMatrix:
    if T.dim != H.n:
        raise ShapeError(f"operator is {T.dim}x{T.dim} but frame has {H.n} rows",
                         (T.dim, T.dim), H.matrix.shape)
    return SymMatrix(multiply(multiply(H.matrix.T, T), H.matrix))


def _check_psd(T: SymMatrix):
    eig = eigen_symmetric(T)
    if eig.eigenvalues[-1] < -PSD_TOL:
        raise DomainError(
            f"operator is not positive semidefinite (min eigenvalue {eig.eigenvalues[-1]:.3e})"
        )
    return eig


def relaxed_benchmark(T: SymMatrix, k: int) -> float:
    """Supremum of det(U^T T U) over orthonormal k-frames: product of the k largest eigenvalues."""
    if not 1 <= k <= T.dim:
        raise ShapeError(f"k must lie in 1..{T.dim}, got {k}")
    eig = _check_psd(T)
    return float(np.prod(eig.eigenvalues[:k]))


def relaxed_frame(T: SymMatrix, k: int) -> np.ndarray:
    """Orthonormal eigenvector frame attaining the relaxed benchmark."""
    if not 1 <= k <= T.dim:
        raise ShapeError(f"k must lie in 1..{T.dim}, got {k}")
    eig = _check_psd(T)
    return np.array(eig.eigenvectors[:, :k])


def det_compression(T: SymMatrix, p: SetPartition) -> float:
    return determinant(compress(T, build_frame(p, p.n)))


def ritz_values(T: SymMatrix, p: SetPartition) -> np.ndarray:
    return eigen_symmetric(compress(T, build_frame(p, p.n))).eigenvalues
