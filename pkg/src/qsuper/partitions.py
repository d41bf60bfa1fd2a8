"""Combinatorial oracle: Durfee rectangles, dissections, admissible
partitions and their generating functions.

This module is deliberately independent of the composition-chain evaluators:
the generating function of admissible partitions is produced by brute-force
enumeration, so equality with the tilde-form supernomial is a genuine
cross-check of the whole chain machinery.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence, Tuple

from .errors import BudgetError, DomainError
from .qpoly import ONE, ZERO, QPoly
from .supernomial import LLike, as_lvec

DEFAULT_BUDGET = 4096


class Partition:
    """Weakly decreasing positive parts, identified with its Ferrers graph."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise DomainError("parts must be positive")
            if i and parts[i - 1] < p:
                raise DomainError("parts must be weakly decreasing")
        self.parts = parts

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "+".join(map(str, self.parts)) if self.parts else "(empty)"


def durfee_rectangle(p: Partition | Sequence[int], excess: int) -> Tuple[int, int]:
    """(width, height) of the maximal rectangle with `excess` more columns
    than rows: the largest h such that the first h parts are all >= h+excess.
    """
    if excess < 0:
        raise DomainError("excess must be nonnegative")
    parts = p.parts if isinstance(p, Partition) else tuple(p)
    h = 0
    while h < len(parts) and parts[h] >= h + 1 + excess:
        h += 1
    return (h + excess, h)


def durfee_dissection(
    p: Partition | Sequence[int], excesses: Sequence[int]
) -> List[Tuple[int, int]]:
    """Successive Durfee rectangles: each rectangle is drawn in the
    sub-partition strictly below the previous one."""
    parts = list(p.parts if isinstance(p, Partition) else p)
    out = []
    for e in excesses:
        w, h = durfee_rectangle(parts, e)
        out.append((w, h))
        parts = parts[h:]
    return out


def _dissection_excesses(L) -> List[int]:
    """(L_{N-1}+...+L_1, ..., L_2+L_1, L_1, 0) for a degree vector L."""
    entries = as_lvec(L).entries
    n = len(entries)
    return [sum(entries[: n - i]) for i in range(1, n + 1)]


def is_admissible(p: Partition | Sequence[int], L: LLike, a: int) -> bool:
    """Exactly a parts, no part above sum(L), and nothing left below the
    prescribed Durfee dissection.  The leftover test and the equivalent
    height-sum test are both evaluated and must agree."""
    L = as_lvec(L)
    if not L.is_nonnegative:
        raise DomainError("admissibility needs a nonnegative degree vector")
    parts = p.parts if isinstance(p, Partition) else tuple(p)
    if len(parts) != a:
        return False
    if parts and parts[0] > sum(L.entries):
        return False
    rects = durfee_dissection(parts, _dissection_excesses(L))
    height_sum = sum(h for _, h in rects)
    by_heights = height_sum == a
    by_leftover = height_sum == len(parts)
    assert by_heights == by_leftover, "dissection conditions disagree"
    return by_heights


def _descending_parts(count: int, max_part: int) -> Iterator[Tuple[int, ...]]:
    """All weakly decreasing tuples of `count` parts in [1, max_part]."""
    if count == 0:
        yield ()
        return

    def rec(remaining: int, cap: int, acc: Tuple[int, ...]):
        if remaining == 0:
            yield acc
            return
        for v in range(min(cap, max_part), 0, -1):
            yield from rec(remaining - 1, v, acc + (v,))

    yield from rec(count, max_part, ())


def enumerate_admissible(L: LLike, a: int, budget: int = DEFAULT_BUDGET) -> List[Partition]:
    """All admissible partitions in deterministic lexicographic order."""
    L = as_lvec(L)
    if a < 0:
        raise DomainError("part count must be nonnegative")
    max_part = sum(L.entries)
    if a * max_part > budget:
        raise BudgetError(
            f"enumeration size {a}*{max_part} exceeds budget {budget}"
        )
    if a == 0:
        return [Partition(())]
    out = [
        Partition(parts)
        for parts in _descending_parts(a, max_part)
        if is_admissible(parts, L, a)
    ]
    out.sort(key=lambda p: p.parts)
    return out


def admissible_genfun(L: LLike, a: int, budget: int = DEFAULT_BUDGET) -> QPoly:
    """Sum of q^{weight} over admissible partitions; must agree with the
    tilde-form supernomial."""
    if a == 0:
        return ONE
    total = ZERO
    for p in enumerate_admissible(L, a, budget):
        total = total + QPoly.monomial(p.weight)
    return total
