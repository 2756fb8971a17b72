# lumpgap/partitions.py
"""
Set partitions of {0, ..., n-1}.

A partition is stored as its restricted-growth string (RGS): state i carries
the label of its cell, and labels appear in first-use order. The RGS is the
canonical form, so equality of partitions is equality of label strings and
cells come out ordered by their minimal element.
"""
import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from math import comb, factorial
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import MAX_STATES
from .errors import PartitionArgumentError

# Zero-based true blocks B_1, B_2, B_3 of the six-state model.
TRUE_BLOCKS: Tuple[Tuple[int, int], ...] = ((0, 1), (2, 3), (4, 5))


@total_ordering
@dataclass(frozen=True)
class SetPartition:
    """Canonical unordered partition; `labels` is the restricted-growth string."""
    labels: Tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if not labels:
            raise PartitionArgumentError("a partition needs at least one state")
        seen = -1
        for x in labels:
            if x < 0 or x > seen + 1:
                raise PartitionArgumentError(f"not a restricted-growth string: {labels}")
            seen = max(seen, x)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "SetPartition":
        """Canonicalize an arbitrary labelling (any hashable labels)."""
        relabel: Dict[object, int] = {}
        rgs = []
        for x in labels:
            if x not in relabel:
                relabel[x] = len(relabel)
            rgs.append(relabel[x])
        return cls(tuple(rgs))

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]], n: Optional[int] = None) -> "SetPartition":
        """Canonicalize a cell listing given in any order."""
        cells = [sorted(set(int(s) for s in cell)) for cell in cells]
        if any(not cell for cell in cells):
            raise PartitionArgumentError("cells must be nonempty")
        states = [s for cell in cells for s in cell]
        if n is None:
            n = len(states)
        if sorted(states) != list(range(n)):
            raise PartitionArgumentError(f"cells {cells} do not partition {{0..{n - 1}}}")
        owner = [0] * n
        for idx, cell in enumerate(cells):
            for s in cell:
                owner[s] = idx
        return cls.from_labels(owner)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return max(self.labels) + 1

    @property
    def cells(self) -> Tuple[Tuple[int, ...], ...]:
        buckets: List[List[int]] = [[] for _ in range(self.k)]
        for state, label in enumerate(self.labels):
            buckets[label].append(state)
        return tuple(tuple(b) for b in buckets)

    @property
    def size_type(self) -> Tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cells))

    def to_list(self) -> List[List[int]]:
        return [list(c) for c in self.cells]

    def encoding(self) -> str:
        return "".join(str(x) if x < 10 else chr(ord("a") + x - 10) for x in self.labels)

    def __lt__(self, other: "SetPartition") -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return (self.n, self.labels) < (other.n, other.labels)

    def __str__(self) -> str:
        return json.dumps(self.to_list(), separators=(",", ":"))


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind by inclusion-exclusion."""
    if n < 0 or k < 0:
        raise PartitionArgumentError("n and k must be nonnegative")
    if k > n:
        return 0
    if k == 0:
        return 1 if n == 0 else 0
    total = sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))
    return total // factorial(k)


def _check_bounds(n: int, k: int) -> None:
    if not (1 <= k <= n <= MAX_STATES):
        raise PartitionArgumentError(f"need 1 <= k <= n <= {MAX_STATES}, got n={n}, k={k}")


def iter_partitions(n: int, k: int) -> Iterator[SetPartition]:
    """Yield every partition of n states into exactly k cells, RGS-lexicographic."""
    _check_bounds(n, k)
    return _iter_rgs(n, k)


def _iter_rgs(n: int, k: int) -> Iterator[SetPartition]:
    labels = [0] * n

    def extend(i: int, used: int) -> Iterator[SetPartition]:
        if i == n:
            if used == k:
                yield SetPartition(tuple(labels))
            return
        remaining = n - i
        for label in range(min(used + 1, k)):
            new_used = max(used, label + 1)
            # enough states left to open the missing labels
            if new_used + (remaining - 1) < k:
                continue
            labels[i] = label
            yield from extend(i + 1, new_used)

    labels[0] = 0
    yield from extend(1, 1)


def enumerate_partitions(n: int, k: int) -> List[SetPartition]:
    """All partitions of {0..n-1} into k nonempty cells; length equals S(n, k)."""
    return list(iter_partitions(n, k))


def size_type_counts(partitions: Iterable[SetPartition]) -> Dict[Tuple[int, ...], int]:
    counts = Counter(p.size_type for p in partitions)
    return dict(sorted(counts.items()))


def block_partition() -> SetPartition:
    return SetPartition.from_cells(TRUE_BLOCKS, 6)


@dataclass(frozen=True)
class CountMatrix:
    """n[i][alpha] = |B_i ∩ A_alpha| for the six-state model, cells in canonical order."""
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        a = np.array(self.entries, dtype=int)
        if a.shape != (3, 3):
            raise PartitionArgumentError(f"count matrix must be 3x3, got {a.shape}")
        if a.min() < 0 or a.max() > 2:
            raise PartitionArgumentError("count matrix entries must lie in {0, 1, 2}")
        if not np.all(a.sum(axis=1) == 2):
            raise PartitionArgumentError("each true block must contribute two states")
        if not np.all(a.sum(axis=0) >= 1):
            raise PartitionArgumentError("each cell must be nonempty")

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=int)

    def row_sums(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.as_array().sum(axis=1))

    def column_sums(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.as_array().sum(axis=0))


def _check_six_three(p: SetPartition) -> None:
    if p.n != 6 or p.k != 3:
        raise PartitionArgumentError(f"defined only for n=6, k=3 (got n={p.n}, k={p.k})")


def count_matrix(p: SetPartition) -> CountMatrix:
    _check_six_three(p)
    rows = []
    for block in TRUE_BLOCKS:
        rows.append(tuple(len(set(block) & set(cell)) for cell in p.cells))
    return CountMatrix(tuple(rows))


class FamilyKind(Enum):
    STRUCTURED_114 = "Structured114"
    STRUCTURED_123 = "Structured123"
    BLOCK = "Block"
    OTHER = "Other"


@dataclass(frozen=True)
class FamilyTag:
    """
    Structural family of a six-state 3-partition.

    Block indices are 1-based: r is the split block, p the intact block and q
    the block that absorbs a singleton (Structured123 only).
    """
    kind: FamilyKind
    size_type: Tuple[int, ...]
    r: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None

    @property
    def structured(self) -> bool:
        return self.kind in (FamilyKind.STRUCTURED_114, FamilyKind.STRUCTURED_123)

    @property
    def label(self) -> str:
        if self.kind is FamilyKind.STRUCTURED_114:
            return f"Structured114(r={self.r})"
        if self.kind is FamilyKind.STRUCTURED_123:
            return f"Structured123(p={self.p},q={self.q},r={self.r})"
        if self.kind is FamilyKind.BLOCK:
            return "Block"
        return "Other(" + ",".join(str(s) for s in self.size_type) + ")"

    def __str__(self) -> str:
        return self.label


def classify(p: SetPartition) -> FamilyTag:
    """Match a partition against the block-aligned subfamilies via its count matrix."""
    n = count_matrix(p).as_array()
    sizes = n.sum(axis=0)
    size_type = p.size_type

    if size_type == (2, 2, 2) and all(2 in n[:, a] for a in range(3)):
        return FamilyTag(FamilyKind.BLOCK, size_type)

    singles = [a for a in range(3) if sizes[a] == 1]
    if size_type == (1, 1, 4):
        owners = {int(np.argmax(n[:, a])) for a in singles}
        if len(owners) == 1:
            return FamilyTag(FamilyKind.STRUCTURED_114, size_type, r=owners.pop() + 1)

    if size_type == (1, 2, 3):
        pair = int(np.argmax(sizes == 2))
        if n[:, pair].max() == 2:
            intact = int(np.argmax(n[:, pair]))
            split = int(np.argmax(n[:, singles[0]]))
            attach = ({0, 1, 2} - {intact, split}).pop()
            return FamilyTag(FamilyKind.STRUCTURED_123, size_type,
                             r=split + 1, p=intact + 1, q=attach + 1)

    return FamilyTag(FamilyKind.OTHER, size_type)


def family_counts(partitions: Iterable[SetPartition]) -> Dict[str, int]:
    counts = Counter(classify(p).kind.value for p in partitions)
    return {kind.value: counts.get(kind.value, 0) for kind in FamilyKind}
