# lumpgap/closedform.py
"""
Closed determinant formulas for the block-aligned partition families.

Notation follows the model: L = K^2 with entries l_ij, t_r = beta_r^2. Block
indices r, p, q are 1-based. For the (1,1,4) family r is the block split into
singletons; for the (1,2,3) family p stays intact, r is split and q absorbs
one singleton of r.

Both the reduced formulas and the unreduced 3x3 matrices they come from are
implemented, so the algebraic reductions can be checked against the generic
compression path.
"""
from dataclasses import dataclass
from math import sqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .compression import det_compression
from .config import STRICT_TOL
from .errors import PartitionArgumentError
from .linalg import SymMatrix, determinant, eigen_symmetric
from .model import BlockModelParams, RegimeReport, SpectralSummary, build_T, check_regime, quotient_L
from .partitions import TRUE_BLOCKS, FamilyKind, FamilyTag, SetPartition, classify, enumerate_partitions


def _check_block(r: int) -> None:
    if r not in (1, 2, 3):
        raise PartitionArgumentError(f"block index must be 1, 2 or 3, got {r!r}")


def _others(r: int) -> Tuple[int, int]:
    _check_block(r)
    p, q = sorted({1, 2, 3} - {r})
    return p, q


def _check_permutation(p: int, q: int, r: int) -> None:
    if sorted((p, q, r)) != [1, 2, 3]:
        raise PartitionArgumentError(f"(p, q, r) must be a permutation of (1, 2, 3), got {(p, q, r)}")


def _l(L: SymMatrix, i: int, j: int) -> float:
    return float(L[i - 1, j - 1])


# (1,1,4) family

def b1_coefficients(r: int, L: SymMatrix) -> Tuple[float, float]:
    """(A_r, B_r): merged-cell diagonal and merged/singleton coupling."""
    p, q = _others(r)
    a_r = (_l(L, p, p) + _l(L, q, q) + 2.0 * _l(L, p, q)) / 2.0
    b_r = (_l(L, p, r) + _l(L, q, r)) / 2.0
    return a_r, b_r


def det_114(r: int, L: SymMatrix, t: Sequence[float]) -> float:
    _check_block(r)
    return t[r - 1] * (3.0 * _l(L, r, r) - 1.0) / 2.0


def det_114_unreduced(r: int, L: SymMatrix, t: Sequence[float]) -> float:
    a_r, b_r = b1_coefficients(r, L)
    return t[r - 1] * (a_r * _l(L, r, r) - 2.0 * b_r * b_r)


def explicit_Q_114(r: int, L: SymMatrix, t: Sequence[float]) -> SymMatrix:
    """Compression matrix in the cell order (B_p ∪ B_q, first singleton of B_r, second singleton)."""
    a_r, b_r = b1_coefficients(r, L)
    lrr, tr = _l(L, r, r), t[r - 1]
    return SymMatrix(np.array([
        [a_r, b_r, b_r],
        [b_r, (lrr + tr) / 2.0, (lrr - tr) / 2.0],
        [b_r, (lrr - tr) / 2.0, (lrr + tr) / 2.0],
    ]))


def cells_114(r: int) -> Tuple[Tuple[int, ...], ...]:
    p, q = _others(r)
    s, u = TRUE_BLOCKS[r - 1]
    return (tuple(sorted(TRUE_BLOCKS[p - 1] + TRUE_BLOCKS[q - 1])), (s,), (u,))


# (1,2,3) family

def det_123(p: int, q: int, r: int, L: SymMatrix, t: Sequence[float]) -> float:
    _check_permutation(p, q, r)
    return (determinant(L) + t[r - 1] * (3.0 * _l(L, p, p) - 1.0)) / 3.0


def det_123_unreduced(p: int, q: int, r: int, L: SymMatrix, t: Sequence[float]) -> float:
    _check_permutation(p, q, r)
    coefficient = (_l(L, p, p) * (_l(L, q, q) + 2.0 * _l(L, q, r) + _l(L, r, r))
                   - (_l(L, p, q) + _l(L, p, r)) ** 2)
    return (determinant(L) + t[r - 1] * coefficient) / 3.0


def explicit_Q_123(p: int, q: int, r: int, L: SymMatrix, t: Sequence[float]) -> SymMatrix:
    """Compression matrix in the cell order (B_p, singleton of B_r, B_q ∪ other singleton of B_r)."""
    _check_permutation(p, q, r)
    lpp, lpq, lpr = _l(L, p, p), _l(L, p, q), _l(L, p, r)
    lqq, lqr, lrr = _l(L, q, q), _l(L, q, r), _l(L, r, r)
    tr = t[r - 1]
    q12 = lpr / sqrt(2.0)
    q13 = (2.0 * lpq + lpr) / sqrt(6.0)
    q23 = lqr / sqrt(3.0) + (lrr - tr) / sqrt(12.0)
    return SymMatrix(np.array([
        [lpp, q12, q13],
        [q12, (lrr + tr) / 2.0, q23],
        [q13, q23, 2.0 * (lqq + lqr) / 3.0 + (lrr + tr) / 6.0],
    ]))


def cells_123(p: int, q: int, r: int) -> Tuple[Tuple[int, ...], ...]:
    _check_permutation(p, q, r)
    s, u = TRUE_BLOCKS[r - 1]
    return (TRUE_BLOCKS[p - 1], (s,), tuple(sorted(TRUE_BLOCKS[q - 1] + (u,))))


def closed_form_value(tag: FamilyTag, L: SymMatrix, t: Sequence[float]) -> float:
    if tag.kind is FamilyKind.STRUCTURED_114:
        return det_114(tag.r, L, t)
    if tag.kind is FamilyKind.STRUCTURED_123:
        return det_123(tag.p, tag.q, tag.r, L, t)
    raise PartitionArgumentError(f"no closed form for {tag.label}")


def explicit_matrix(tag: FamilyTag, L: SymMatrix, t: Sequence[float]) -> SymMatrix:
    if tag.kind is FamilyKind.STRUCTURED_114:
        return explicit_Q_114(tag.r, L, t)
    if tag.kind is FamilyKind.STRUCTURED_123:
        return explicit_Q_123(tag.p, tag.q, tag.r, L, t)
    raise PartitionArgumentError(f"no explicit matrix for {tag.label}")


def structured_partitions() -> List[Tuple[SetPartition, FamilyTag]]:
    """The 15 structured partitions of the six-state model, in enumeration order."""
    out = []
    for part in enumerate_partitions(6, 3):
        tag = classify(part)
        if tag.structured:
            out.append((part, tag))
    return out


@dataclass(frozen=True)
class FamilyRow:
    partition: SetPartition
    tag: FamilyTag
    closed_form: float
    explicit: float
    generic: float

    @property
    def discrepancy(self) -> float:
        return max(abs(self.closed_form - self.generic), abs(self.explicit - self.generic))


@dataclass(frozen=True)
class FamilyDeterminants:
    rows: Tuple[FamilyRow, ...]
    det_L: float
    ell: Tuple[float, float, float]
    t: Tuple[float, float, float]

    @property
    def max_discrepancy(self) -> float:
        return max(row.discrepancy for row in self.rows)


def family_determinants(params: BlockModelParams) -> FamilyDeterminants:
    T = build_T(params)
    L = quotient_L(params)
    t = tuple((params.a[r] - params.b[r]) ** 2 for r in range(3))
    rows = tuple(
        FamilyRow(
            partition=part,
            tag=tag,
            closed_form=closed_form_value(tag, L, t),
            explicit=determinant(explicit_matrix(tag, L, t)),
            generic=det_compression(T, part),
        )
        for part, tag in structured_partitions()
    )
    return FamilyDeterminants(
        rows=rows,
        det_L=determinant(L),
        ell=tuple(_l(L, i, i) for i in (1, 2, 3)),
        t=t,
    )


# diagonal spectral bound

@dataclass(frozen=True)
class DiagBoundRow:
    index: int
    value: float
    weight: Optional[float]
    lower_ok: bool
    upper_ok: bool

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok


def diag_bound_check(L: SymMatrix, kappa2: float, kappa3: float) -> List[DiagBoundRow]:
    """
    (3 l_ii - 1) / 2 is a convex combination of kappa2^2 and kappa3^2.

    The weight is None when the two squares coincide (within STRICT_TOL).
    """
    hi, lo = max(kappa2 ** 2, kappa3 ** 2), min(kappa2 ** 2, kappa3 ** 2)
    spread = kappa2 ** 2 - kappa3 ** 2
    rows = []
    for i in (1, 2, 3):
        value = (3.0 * _l(L, i, i) - 1.0) / 2.0
        weight = (value - kappa3 ** 2) / spread if abs(spread) > STRICT_TOL else None
        rows.append(DiagBoundRow(
            index=i,
            value=value,
            weight=weight,
            lower_ok=value >= lo - STRICT_TOL,
            upper_ok=value <= hi + STRICT_TOL,
        ))
    return rows


@dataclass(frozen=True, eq=False)
class SpectralRepresentation:
    v2: np.ndarray
    v3: np.ndarray
    mu2: float
    mu3: float
    residual: float


def spectral_representation(L: SymMatrix, kappa2: float, kappa3: float) -> SpectralRepresentation:
    """L = (1/3) 11^T + kappa2^2 v2 v2^T + kappa3^2 v3 v3^T with v2, v3 ⟂ 1."""
    ones = np.ones(3) / sqrt(3.0)
    # orthonormal basis of the complement of 1; L leaves it invariant
    z = np.column_stack([
        np.array([1.0, -1.0, 0.0]) / sqrt(2.0),
        np.array([1.0, 1.0, -2.0]) / sqrt(6.0),
    ])
    eig = eigen_symmetric(SymMatrix(z.T @ L.entries @ z))
    vectors = z @ eig.eigenvectors
    j2, j3 = (0, 1) if kappa2 ** 2 >= kappa3 ** 2 else (1, 0)
    v2, v3 = vectors[:, j2], vectors[:, j3]
    mu2, mu3 = float(eig.eigenvalues[j2]), float(eig.eigenvalues[j3])
    rebuilt = np.outer(ones, ones) + kappa2 ** 2 * np.outer(v2, v2) + kappa3 ** 2 * np.outer(v3, v3)
    return SpectralRepresentation(
        v2=np.array(v2), v3=np.array(v3), mu2=mu2, mu3=mu3,
        residual=float(np.max(np.abs(rebuilt - L.entries))),
    )


# structured-family gap

@dataclass(frozen=True)
class GapRow:
    partition: SetPartition
    tag: FamilyTag
    value: float
    margin: float
    chain_bound: float
    chain_ok: bool

    @property
    def strict(self) -> bool:
        return self.margin > STRICT_TOL


@dataclass(frozen=True)
class GapTheoremReport:
    regime: RegimeReport
    bound: float
    relaxed_benchmark: float
    rows: Tuple[GapRow, ...]

    @property
    def applicable(self) -> bool:
        return self.regime.holds

    @property
    def all_strict(self) -> bool:
        return all(row.strict for row in self.rows)

    @property
    def closest(self) -> GapRow:
        return min(self.rows, key=lambda row: (row.margin, row.partition))

    @property
    def verdict(self) -> str:
        if not self.regime.a1:
            return "A1 fails: ordering hypothesis not met, the family gap statement does not apply"
        if not self.regime.a2:
            return "A2 fails: nondegeneracy hypothesis not met, the family gap statement does not apply"
        if self.all_strict:
            return "all structured partitions strictly below the relaxed benchmark"
        return "hypotheses hold but some margins are not numerically strict"


def family_gap_check(summary: SpectralSummary, L: SymMatrix) -> GapTheoremReport:
    regime = check_regime(summary, L)
    k2, k3 = summary.kappa2 ** 2, summary.kappa3 ** 2
    bound = k2 * summary.t_star
    t = summary.t
    rows = []
    for part, tag in structured_partitions():
        value = closed_form_value(tag, L, t)
        tr = t[tag.r - 1]
        if tag.kind is FamilyKind.STRUCTURED_123:
            chain = (k2 * k3 + 2.0 * k2 * tr) / 3.0
            chain_ok = value <= chain + STRICT_TOL and chain < bound
        else:
            chain = tr * k2
            chain_ok = value <= chain + STRICT_TOL and chain <= bound + STRICT_TOL
        rows.append(GapRow(part, tag, value, bound - value, chain, chain_ok))
    return GapTheoremReport(
        regime=regime, bound=bound, relaxed_benchmark=summary.relaxed_benchmark, rows=tuple(rows),
    )
