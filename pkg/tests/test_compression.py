import numpy as np
import pytest

from lumpgap.compression import (build_frame, compress, det_compression, frame_from_cells,
                                 relaxed_benchmark, relaxed_frame, ritz_values)
from lumpgap.errors import DomainError, PartitionArgumentError, ShapeError
from lumpgap.linalg import SymMatrix, determinant, eigen_symmetric
from lumpgap.model import build_T
from lumpgap.partitions import SetPartition, enumerate_partitions


def _random_psd(rng, n=6):
    x = rng.normal(size=(n, n))
    return SymMatrix(x @ x.T / n)


def test_frames_are_orthonormal():
    for part in enumerate_partitions(6, 3):
        frame = build_frame(part, 6)
        np.testing.assert_allclose(frame.gram(), np.eye(3), atol=1e-15)
        assert frame.k == 3


def test_identity_compresses_to_identity():
    for part in enumerate_partitions(6, 3):
        assert det_compression(SymMatrix.identity(6), part) == pytest.approx(1.0, abs=1e-14)


def test_cell_order_does_not_change_determinant(rng):
    T = _random_psd(rng)
    cells = ((0, 1, 4, 5), (2,), (3,))
    canonical = det_compression(T, SetPartition.from_cells(cells))
    for order in ((2, 0, 1), (1, 2, 0), (2, 1, 0)):
        frame = frame_from_cells([cells[i] for i in order], 6)
        assert determinant(compress(T, frame)) == pytest.approx(canonical, abs=1e-14)


def test_frame_from_cells_rejects_overlap():
    with pytest.raises(PartitionArgumentError):
        frame_from_cells([(0, 1), (1, 2)], 3)


def test_dimension_mismatches():
    part = enumerate_partitions(4, 2)[0]
    with pytest.raises(ShapeError):
        build_frame(part, 6)
    with pytest.raises(ShapeError):
        compress(SymMatrix.identity(6), build_frame(part, 4))


def test_relaxed_benchmark_of_diagonal():
    T = SymMatrix(np.diag([1.0, 4.0, 2.0, 3.0]))
    assert relaxed_benchmark(T, 2) == pytest.approx(12.0)
    assert relaxed_benchmark(T, 4) == pytest.approx(24.0)


def test_relaxed_benchmark_checks_inputs():
    with pytest.raises(DomainError):
        relaxed_benchmark(SymMatrix(np.diag([1.0, -1.0])), 1)
    with pytest.raises(ShapeError):
        relaxed_benchmark(SymMatrix.identity(3), 4)
    with pytest.raises(ShapeError):
        relaxed_benchmark(SymMatrix.identity(3), 0)


def test_relaxed_frame_attains_benchmark(rng):
    for _ in range(20):
        T = _random_psd(rng)
        U = relaxed_frame(T, 3)
        np.testing.assert_allclose(U.T @ U, np.eye(3), atol=1e-10)
        assert determinant(U.T @ T.entries @ U) == pytest.approx(relaxed_benchmark(T, 3), abs=1e-10)


def test_interlacing_and_benchmark_bound(rng):
    for _ in range(50):
        T = _random_psd(rng)
        spectrum = np.sort(np.linalg.eigvalsh(T.entries))[::-1]
        bound = relaxed_benchmark(T, 3)
        for part in enumerate_partitions(6, 3):
            ritz = ritz_values(T, part)
            for j in range(3):
                assert ritz[j] <= spectrum[j] + 1e-10
                assert ritz[j] >= spectrum[j + 3] - 1e-10
            assert det_compression(T, part) <= bound + 1e-10


def test_interlacing_on_the_example_model(example_params):
    T = build_T(example_params)
    spectrum = eigen_symmetric(T).eigenvalues
    for part in enumerate_partitions(6, 3):
        ritz = ritz_values(T, part)
        assert list(ritz) == sorted(ritz, reverse=True)
        for j in range(3):
            assert spectrum[j + 3] - 1e-12 <= ritz[j] <= spectrum[j] + 1e-12
