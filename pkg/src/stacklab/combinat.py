"""Brute-force enumeration of stacks, and the partition bijections.

Everything here is deliberately naive: sequences are generated explicitly and
filtered by the defining inequalities, so the counts serve as an independent
check on the generating functions in :mod:`stacklab.genfun`.

A stack is stored in canonical form, with the summit ``c`` at the last
occurrence of the largest part. Objects "with summits" carry a separate index
saying which occurrence of the maximum is marked.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, SafetyBoundError, UsageError

SAFETY_BOUND = 40


class StackVariant(enum.Enum):
    STACK = "stack"
    RECEDING = "receding"
    SHIFTED = "shifted"
    STRICT = "strict"
    SEMISTRICT = "semistrict"


@dataclass(frozen=True)
class UnimodalSequence:
    """``a`` (weakly increasing), summit ``c``, then ``b`` (weakly decreasing)."""

    a: tuple[int, ...]
    c: int
    b: tuple[int, ...]

    def __post_init__(self):
        parts = self.parts
        if any(p < 1 for p in parts):
            raise DomainError("parts must be positive")
        if any(x > y for x, y in zip(self.a, self.a[1:])) or any(x > self.c for x in self.a):
            raise DomainError("ascending flank must be weakly increasing up to the summit")
        if any(x < y for x, y in zip(self.b, self.b[1:])) or any(x > self.c for x in self.b):
            raise DomainError("descending flank must be weakly decreasing below the summit")

    @property
    def parts(self) -> tuple[int, ...]:
        return self.a + (self.c,) + self.b

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def summit_index(self) -> int:
        return len(self.a)

    def format(self, marked: int | None = None) -> str:
        """Concatenated parts with the marked summit in parentheses, e.g. ``1123(3)221``.

        Parts above 9 are separated by dots to keep the string unambiguous.
        """
        marked = self.summit_index if marked is None else marked
        sep = "." if max(self.parts) > 9 else ""
        out = []
        for i, p in enumerate(self.parts):
            out.append(f"({p})" if i == marked else str(p))
        return sep.join(out)

    def __str__(self) -> str:
        return self.format()

    @classmethod
    def from_parts(cls, parts, summit: int | None = None) -> "UnimodalSequence":
        """Split a unimodal list at ``summit`` (default: last maximum)."""
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise DomainError("empty sequence")
        if summit is None:
            top = max(parts)
            summit = max(i for i, p in enumerate(parts) if p == top)
        return cls(parts[:summit], parts[summit], parts[summit + 1 :])


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise DomainError("partition parts must be positive")
        if any(x < y for x, y in zip(self.parts, self.parts[1:])):
            raise DomainError("partition parts must be weakly decreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def durfee(self) -> int:
        return sum(1 for i, p in enumerate(self.parts) if p >= i + 1)

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts) or "0"


@dataclass(frozen=True)
class FrobeniusSymbol:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        if len(self.alpha) != len(self.beta):
            raise DomainError("rows of a Frobenius symbol must have equal length")
        for row in (self.alpha, self.beta):
            if any(x < 0 for x in row):
                raise DomainError("Frobenius entries must be nonnegative")
            if any(x <= y for x, y in zip(row, row[1:])):
                raise DomainError("Frobenius rows must be strictly decreasing")

    @property
    def k(self) -> int:
        return len(self.alpha)

    @property
    def size(self) -> int:
        return self.k + sum(self.alpha) + sum(self.beta)

    def __str__(self) -> str:
        return " ".join(map(str, self.alpha)) + " / " + " ".join(map(str, self.beta))

    @classmethod
    def parse(cls, text: str) -> "FrobeniusSymbol":
        top, _, bottom = text.partition("/")
        return cls(tuple(int(t) for t in top.split()), tuple(int(t) for t in bottom.split()))


# ---------------------------------------------------------------------------
# enumeration


def _check_bound(n: int, unsafe: bool) -> None:
    if n > SAFETY_BOUND and not unsafe:
        raise SafetyBoundError(f"size {n} exceeds the enumeration bound {SAFETY_BOUND}")


def _weak_increasing(total: int, top: int) -> Iterator[tuple[int, ...]]:
    """Weakly increasing tuples of parts in 1..top summing to total."""
    for parts in _partitions_bounded(total, top):
        yield tuple(reversed(parts))


def _partitions_bounded(total: int, top: int) -> Iterator[tuple[int, ...]]:
    """Partitions of total into parts <= top, largest part first."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, top), 0, -1):
        for rest in _partitions_bounded(total - first, first):
            yield (first,) + rest


def _raw_stacks(n: int) -> Iterator[UnimodalSequence]:
    # every unimodal sequence exactly once, split at the last maximum
    for c in range(1, n + 1):
        rest = n - c
        for sa in range(rest + 1):
            for a in _weak_increasing(sa, c):
                for b in _partitions_bounded(rest - sa, c - 1):
                    yield UnimodalSequence(a, c, b)


def _covers(flank: tuple[int, ...], c: int) -> bool:
    return set(range(1, c)) <= set(flank)


def _steps_ok(seq: tuple[int, ...]) -> bool:
    return all(abs(x - y) <= 1 for x, y in zip(seq, seq[1:]))


def is_valid(variant: StackVariant, seq: UnimodalSequence) -> bool:
    """Whether a canonical sequence belongs to the variant."""
    a, c, b = seq.a, seq.c, seq.b
    if b and not c > b[0]:
        return False
    if variant is StackVariant.STACK:
        return True
    if variant is StackVariant.RECEDING:
        return _covers(a, c) and _covers(b, c) and _steps_ok(a) and _steps_ok(b)
    if variant is StackVariant.SHIFTED:
        return _covers(a, c) and _steps_ok(a)
    if variant is StackVariant.STRICT:
        inc = all(x < y for x, y in zip(a, a[1:])) and (not a or a[-1] < c)
        dec = all(x > y for x, y in zip(b, b[1:]))
        return inc and dec
    if variant is StackVariant.SEMISTRICT:
        return all(x < y for x, y in zip(a, a[1:])) and (not a or a[-1] < c)
    raise UsageError(f"unknown variant {variant}")


def enumerate_stacks(variant: StackVariant, n: int, unsafe: bool = False) -> list[UnimodalSequence]:
    """All stacks of the given variant and size, ordered by (c, a, b)."""
    if n < 1:
        raise UsageError("size must be at least 1")
    _check_bound(n, unsafe)
    found = [s for s in _raw_stacks(n) if is_valid(variant, s)]
    return sorted(found, key=lambda s: (s.c, s.a, s.b))


def count(variant: StackVariant, n: int, unsafe: bool = False) -> int:
    return len(enumerate_stacks(variant, n, unsafe))


def count_with_summits(variant: StackVariant, n: int, unsafe: bool = False) -> int:
    """Stacks counted once per occurrence of the largest part."""
    if variant not in (StackVariant.STACK, StackVariant.RECEDING, StackVariant.SHIFTED):
        raise UsageError(f"{variant.value} stacks have a unique summit")
    return sum(s.parts.count(s.c) for s in enumerate_stacks(variant, n, unsafe))


def partitions(n: int, unsafe: bool = False) -> list[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        raise UsageError("n must be nonnegative")
    _check_bound(n, unsafe)
    return [Partition(p) for p in _partitions_bounded(n, n)]


# ---------------------------------------------------------------------------
# Frobenius symbols


def partition_to_frobenius(p: Partition) -> FrobeniusSymbol:
    if not p.parts:
        raise DomainError("the empty partition has no diagonal")
    k = p.durfee()
    conj = p.conjugate().parts
    alpha = tuple(p.parts[j] - (j + 1) for j in range(k))
    beta = tuple(conj[j] - (j + 1) for j in range(k))
    return FrobeniusSymbol(alpha, beta)


def frobenius_to_partition(f: FrobeniusSymbol) -> Partition:
    k = f.k
    if k == 0:
        raise DomainError("empty Frobenius symbol")
    # rows 1..k: diagonal cell plus alpha_j to its right, plus the cells
    # contributed by the leg columns below the diagonal
    rows = [f.alpha[j] + j + 1 for j in range(k)]
    # row i > k (1-based) holds one cell from each column whose leg reaches it
    for i in range(k + 1, f.beta[0] + 2):
        rows.append(sum(1 for j in range(k) if f.beta[j] + j + 1 >= i))
    try:
        p = Partition(tuple(rows))
    except DomainError:
        raise DomainError(f"{f} does not describe a partition") from None
    if partition_to_frobenius(p) != f:
        raise DomainError(f"{f} does not describe a partition")
    return p


def has_zero_top_row(f: FrobeniusSymbol) -> bool:
    return 0 in f.alpha


def kth_part_is_k(p: Partition) -> bool:
    return any(part == k for k, part in enumerate(p.parts, start=1))


# ---------------------------------------------------------------------------
# partitions <-> receding stacks with summits


def _diagonal_lengths(p: Partition) -> dict[int, int]:
    lengths: dict[int, int] = {}
    for i, row in enumerate(p.parts):
        for j in range(row):
            lengths[j - i] = lengths.get(j - i, 0) + 1
    return lengths


def partition_to_receding_summit(p: Partition) -> tuple[UnimodalSequence, int]:
    """Read the Ferrers diagram along diagonals.

    Returns the canonical sequence and the index (into ``parts``) of the marked
    summit, which is the main diagonal.
    """
    if not p.parts:
        raise DomainError("the empty partition has no diagonal")
    lengths = _diagonal_lengths(p)
    lo, hi = min(lengths), max(lengths)
    parts = [lengths[d] for d in range(lo, hi + 1)]
    marked = -lo
    return UnimodalSequence.from_parts(parts), marked


def is_receding_with_mark(parts: tuple[int, ...], marked: int) -> bool:
    if not 0 <= marked < len(parts) or parts[marked] != max(parts):
        return False
    try:
        seq = UnimodalSequence.from_parts(parts, marked)
    except DomainError:
        return False
    c = seq.c
    return _covers(seq.a, c) and _covers(seq.b, c) and _steps_ok(seq.parts)


def receding_summit_to_partition(seq: UnimodalSequence, marked: int) -> Partition:
    """Inverse of :func:`partition_to_receding_summit`."""
    parts = seq.parts
    if not is_receding_with_mark(parts, marked):
        raise DomainError(f"{seq.format(marked)} is not a receding stack with summit")
    rows: dict[int, int] = {}
    for idx, length in enumerate(parts):
        d = idx - marked
        for t in range(length):
            # diagonal d starts at (row, col) = (-d, 0) below, (0, d) above
            i = t + max(0, -d)
            rows[i] = rows.get(i, 0) + 1
    try:
        p = Partition(tuple(rows[i] for i in sorted(rows)))
    except DomainError:
        raise DomainError(f"{seq.format(marked)} does not come from a Ferrers diagram") from None
    if partition_to_receding_summit(p) != (seq, marked):
        raise DomainError(f"{seq.format(marked)} does not come from a Ferrers diagram")
    return p


def summit_dominates_b(seq: UnimodalSequence, marked: int) -> bool:
    """Whether the marked summit is strictly larger than every part after it."""
    parts = seq.parts
    return all(x < parts[marked] for x in parts[marked + 1 :])

