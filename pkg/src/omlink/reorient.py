"""Reorientation of circuit sets and the cyclic-reorientation filter."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .core import CircuitSet, SignedSet, to_mask, from_mask


@dataclass(frozen=True, order=True)
class ReorientationSet:
    mask: int

    @classmethod
    def of(cls, elements: Iterable[int]) -> ReorientationSet:
        return cls(to_mask(elements))

    @property
    def elements(self) -> frozenset[int]:
        return from_mask(self.mask)

    def __len__(self):
        return self.mask.bit_count()

    def __str__(self):
        return "{" + ",".join(map(str, sorted(self.elements))) + "}"


def _flip(p: int, q: int, a: int) -> tuple[int, int]:
    return (p & ~a) | (q & a), (q & ~a) | (p & a)


def reorient_signed_set(c: SignedSet, a: ReorientationSet | Iterable[int]) -> SignedSet:
    am = a.mask if isinstance(a, ReorientationSet) else to_mask(a)
    return SignedSet.from_masks(*_flip(*c.masks, am))


def reorient_circuit_set(circuits: CircuitSet, a: ReorientationSet | Iterable[int]) -> CircuitSet:
    am = a.mask if isinstance(a, ReorientationSet) else to_mask(a)
    if not am:
        return circuits
    table = {k: _flip(p, q, am) for k, (p, q) in circuits.table.items()}
    return CircuitSet(circuits.n, circuits.r, table)


def enumerate_reorientation_sets(n: int) -> list[ReorientationSet]:
    """One representative of each complementary pair {A, E - A}.

    All A with |A| < n/2, plus, when n is even, the n/2-subsets containing 1.
    Ordered by size, then lexicographically.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for k in range(0, n // 2 + 1):
        for c in combinations(range(1, n + 1), k):
            if 2 * k == n and c[0] != 1:
                continue
            out.append(ReorientationSet(to_mask(c)))
    return out


def cyclic_reorientation_sets(circuits: CircuitSet,
                              candidates: Iterable[ReorientationSet]) -> set[ReorientationSet]:
    """Candidates A with A & C in {C+, C-} for some circuit C."""
    cands = list(candidates)
    if not cands or not circuits.table:
        return set()
    a = np.array([c.mask for c in cands], dtype=np.int64)[:, None]
    keys = np.array(list(circuits.table.keys()), dtype=np.int64)[None, :]
    pos = np.array([p for p, _ in circuits.table.values()], dtype=np.int64)[None, :]
    neg = np.array([q for _, q in circuits.table.values()], dtype=np.int64)[None, :]
    inter = a & keys
    hit = ((inter == pos) | (inter == neg)).any(axis=1)
    return {c for c, h in zip(cands, hit) if h}
