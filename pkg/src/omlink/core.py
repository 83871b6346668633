"""Uniform oriented matroids in chirotope and circuit form.

Elements are labelled ``1..n``.  Internally every subset is a bitmask with
element ``k`` stored at bit ``k - 1``; the public types expose frozensets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

import numpy as np


class FormatError(ValueError):
    """Malformed chirotope text."""


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


# -- bitmask helpers ---------------------------------------------------------

def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def from_mask(mask: int) -> frozenset[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return frozenset(out)


def mask_elements(mask: int) -> tuple[int, ...]:
    return tuple(sorted(from_mask(mask)))


@lru_cache(maxsize=None)
def subset_masks(n: int, k: int) -> tuple[int, ...]:
    """All k-subsets of 1..n as masks, in lexicographic order."""
    return tuple(to_mask(c) for c in combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def _rank_table(n: int, k: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(subset_masks(n, k))}


# -- signed sets -------------------------------------------------------------

@dataclass(frozen=True)
class SignedSet:
    positive: frozenset[int] = frozenset()
    negative: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "negative", frozenset(self.negative))
        if self.positive & self.negative:
            raise DomainError(
                f"positive and negative parts overlap: {sorted(self.positive & self.negative)}")

    @classmethod
    def from_masks(cls, pos: int, neg: int) -> SignedSet:
        return cls(from_mask(pos), from_mask(neg))

    @property
    def underlying(self) -> frozenset[int]:
        return self.positive | self.negative

    @property
    def masks(self) -> tuple[int, int]:
        return to_mask(self.positive), to_mask(self.negative)

    def __neg__(self) -> SignedSet:
        return SignedSet(self.negative, self.positive)

    def opposite(self) -> SignedSet:
        return -self

    def __str__(self):
        p = ",".join(map(str, sorted(self.positive)))
        q = ",".join(map(str, sorted(self.negative)))
        return f"{p}|{q}"

    @classmethod
    def parse(cls, text: str) -> SignedSet:
        """Inverse of ``str``: ``"1,2,3|4,5"``."""
        try:
            p, q = text.strip().split("|")
            pos = [int(x) for x in p.split(",") if x.strip()]
            neg = [int(x) for x in q.split(",") if x.strip()]
        except ValueError as exc:
            raise FormatError(f"bad signed set {text!r}") from exc
        return cls(frozenset(pos), frozenset(neg))


# A circuit is a signed set; the uniform-size invariant is enforced by CircuitSet.
Circuit = SignedSet


# -- chirotopes --------------------------------------------------------------

@dataclass(frozen=True)
class Chirotope:
    """Uniform chirotope stored as a bit vector: bit ``i`` set means basis ``i``
    (0-based lexicographic rank) has sign -1.  Always canonical (basis 0 positive).
    """
    n: int
    r: int
    negbits: int

    def __post_init__(self):
        if not 1 <= self.r <= self.n:
            raise DomainError(f"need 1 <= r <= n, got n={self.n}, r={self.r}")
        size = comb(self.n, self.r)
        bits = self.negbits & ((1 << size) - 1)
        if bits & 1:
            bits ^= (1 << size) - 1
        object.__setattr__(self, "negbits", bits)

    @property
    def size(self) -> int:
        return comb(self.n, self.r)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(-1 if (self.negbits >> i) & 1 else 1 for i in range(self.size))

    @classmethod
    def from_signs(cls, n: int, r: int, signs: Iterable[int]) -> Chirotope:
        bits = 0
        for i, s in enumerate(signs):
            if s < 0:
                bits |= 1 << i
            elif s == 0:
                raise DomainError(f"zero sign at basis {i + 1}; only uniform chirotopes are supported")
        return cls(n, r, bits)

    def sign_at(self, index: int) -> int:
        """Sign of the basis with 0-based lexicographic rank ``index``."""
        return -1 if (self.negbits >> index) & 1 else 1

    def reoriented(self, elements: Iterable[int]) -> Chirotope:
        """Chirotope of the reorientation on ``elements``."""
        a = to_mask(elements)
        bits = 0
        for i, m in enumerate(subset_masks(self.n, self.r)):
            flip = (m & a).bit_count() & 1
            if ((self.negbits >> i) & 1) ^ flip:
                bits |= 1 << i
        return Chirotope(self.n, self.r, bits)

    def __str__(self):
        return "".join("-" if (self.negbits >> i) & 1 else "+" for i in range(self.size))


def parse_chirotope(text: str, n: int = 9, r: int = 4) -> Chirotope:
    text = text.strip()
    expected = comb(n, r)
    if len(text) != expected:
        raise FormatError(
            f"chirotope for (n={n}, r={r}) needs {expected} signs, got {len(text)}")
    bits = 0
    for i, ch in enumerate(text):
        if ch == "-":
            bits |= 1 << i
        elif ch != "+":
            raise FormatError(f"illegal character {ch!r} at position {i + 1}")
    return Chirotope(n, r, bits)


def flip(text: str) -> str:
    return text.translate(str.maketrans("+-", "-+"))


def basis_rank(subset: Iterable[int], n: int, r: int | None = None) -> int:
    """1-based position of ``subset`` among the sorted r-subsets of 1..n."""
    elems = sorted(subset)
    if r is None:
        r = len(elems)
    if len(elems) != r or len(set(elems)) != r:
        raise DomainError(f"expected {r} distinct elements, got {elems}")
    if elems and (elems[0] < 1 or elems[-1] > n):
        raise DomainError(f"elements must lie in 1..{n}, got {elems}")
    # count subsets that precede elems lexicographically
    rank = 0
    prev = 0
    for i, x in enumerate(elems):
        for y in range(prev + 1, x):
            rank += comb(n - y, r - i - 1)
        prev = x
    return rank + 1


def _permutation_sign(seq: tuple[int, ...]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def chi_eval(chi: Chirotope, elements: tuple[int, ...]) -> int:
    """Alternating extension of the chirotope to ordered r-tuples."""
    if len(elements) != chi.r:
        raise DomainError(f"expected an ordered {chi.r}-tuple, got {elements}")
    if len(set(elements)) != len(elements):
        raise DomainError(f"repeated element in {elements}")
    if min(elements) < 1 or max(elements) > chi.n:
        raise DomainError(f"elements must lie in 1..{chi.n}, got {elements}")
    idx = _rank_table(chi.n, chi.r)[to_mask(elements)]
    return chi.sign_at(idx) * _permutation_sign(tuple(elements))


# -- circuits ----------------------------------------------------------------

@dataclass(frozen=True)
class CircuitSet:
    """One circuit per underlying subset; the opposite circuit is implicit.

    ``table`` maps the underlying-set mask to ``(positive mask, negative mask)``.
    Nothing is validated here so that corrupted collections can be represented;
    see :func:`validate_circuit_axioms`.
    """
    n: int
    r: int
    table: Mapping[int, tuple[int, int]] = field(repr=False)

    @classmethod
    def from_circuits(cls, n: int, r: int, circuits: Iterable[SignedSet]) -> CircuitSet:
        table = {}
        for c in circuits:
            p, q = c.masks
            table[p | q] = (p, q)
        return cls(n, r, table)

    def __len__(self):
        return len(self.table)

    def __iter__(self) -> Iterator[SignedSet]:
        for key in sorted(self.table, key=lambda m: mask_elements(m)):
            yield SignedSet.from_masks(*self.table[key])

    def circuit(self, subset: Iterable[int]) -> SignedSet:
        return SignedSet.from_masks(*self.table[to_mask(subset)])

    @property
    def circuits(self) -> dict[frozenset[int], SignedSet]:
        return {from_mask(k): SignedSet.from_masks(*v) for k, v in self.table.items()}

    def same_matroid(self, other: CircuitSet) -> bool:
        """Equality up to per-circuit negation."""
        if (self.n, self.r) != (other.n, other.r) or self.table.keys() != other.table.keys():
            return False
        for k, (p, q) in self.table.items():
            if other.table[k] not in ((p, q), (q, p)):
                return False
        return True

    def replace(self, subset: Iterable[int], circuit: SignedSet) -> CircuitSet:
        table = dict(self.table)
        table.pop(to_mask(subset), None)
        p, q = circuit.masks
        table[p | q] = (p, q)
        return CircuitSet(self.n, self.r, table)


@lru_cache(maxsize=None)
def _circuit_plan(n: int, r: int):
    """For each (r+1)-subset: its mask and, per element in ascending order,
    (element bit, rank of the complementary basis, parity (-1)^(i-1))."""
    ranks = _rank_table(n, r)
    plan = []
    for s in subset_masks(n, r + 1):
        elems = mask_elements(s)
        row = []
        for i, x in enumerate(elems):
            bit = 1 << (x - 1)
            row.append((bit, ranks[s & ~bit], i & 1))
        plan.append((s, tuple(row)))
    return tuple(plan)


def circuits_from_chirotope(chi: Chirotope) -> CircuitSet:
    """sgn(x_i) = (-1)^(i-1) chi(x_1..^x_i..x_{r+1}) on the ascending ordering."""
    neg = chi.negbits
    table = {}
    for s, row in _circuit_plan(chi.n, chi.r):
        p = 0
        for bit, idx, odd in row:
            if ((neg >> idx) & 1) ^ odd == 0:
                p |= bit
        table[s] = (p, s & ~p)
    return CircuitSet(chi.n, chi.r, table)


def classify_partition(circuit: SignedSet) -> tuple[int, int]:
    a, b = len(circuit.positive), len(circuit.negative)
    return (a, b) if a >= b else (b, a)


def is_acyclic(circuits: CircuitSet) -> bool:
    return all(p and q for p, q in circuits.table.values())


# -- axiom validation --------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: str | None = None
    detail: str | None = None

    def __bool__(self):
        return self.ok


@lru_cache(maxsize=4096)
def _submasks_of_size(mask: int, k: int) -> tuple[int, ...]:
    bits = [1 << i for i in range(mask.bit_length()) if (mask >> i) & 1]
    return tuple(sum(c) for c in combinations(bits, k))


def validate_circuit_axioms(circuits: CircuitSet) -> AxiomReport:
    """Check symmetry, incomparability and weak elimination, plus uniformity.

    Returns the first violation found.  Opposites are implicit in the storage,
    so symmetry reduces to non-emptiness and disjointness of each stored pair.
    """
    n, r = circuits.n, circuits.r
    table = circuits.table
    for key, (p, q) in table.items():
        if p & q:
            return AxiomReport(False, "signed set", f"overlapping parts in {SignedSet.from_masks(p, 0)}")
        if not (p | q):
            return AxiomReport(False, "symmetry", "empty circuit")
        if p | q != key:
            return AxiomReport(False, "storage", f"circuit {SignedSet.from_masks(p, q)} stored under "
                                                  f"{sorted(from_mask(key))}")
    expected = subset_masks(n, r + 1)
    missing = [m for m in expected if m not in table]
    if missing:
        return AxiomReport(False, "uniformity",
                           f"{len(missing)} missing circuits, first {sorted(from_mask(missing[0]))}")
    extra = [m for m in table if m.bit_count() != r + 1]
    if extra:
        for a in table:
            for b in table:
                if a != b and a & b == a:
                    return AxiomReport(False, "incomparability",
                                       f"{sorted(from_mask(a))} inside {sorted(from_mask(b))}")
        return AxiomReport(False, "uniformity", f"circuit of size {extra[0].bit_count()}")

    if len(table) == len(expected):
        return _eliminate_vectorized(n, r, [table[m] for m in expected])
    return _eliminate_loop(table, r)


def _eliminate_loop(table, r: int) -> AxiomReport:
    items = list(table.items())
    for i, (k1, (p1, q1)) in enumerate(items):
        for k2, (p2, q2) in items[i + 1:]:
            common = k1 & k2
            while common:
                e = common & -common
                common ^= e
                # orient so that e is positive in C1 and negative in C2
                a_p, a_q = (p1, q1) if p1 & e else (q1, p1)
                b_p, b_q = (q2, p2) if p2 & e else (p2, q2)
                P = (a_p | b_p) & ~e
                N = (a_q | b_q) & ~e
                if not _has_conformal(table, P, N, r + 1):
                    c1 = SignedSet.from_masks(a_p, a_q)
                    c2 = SignedSet.from_masks(b_p, b_q)
                    return AxiomReport(
                        False, "weak elimination",
                        f"C1={c1}, C2={c2}, e={e.bit_length()}: no C3 with "
                        f"C3+ in {sorted(from_mask(P))}, C3- in {sorted(from_mask(N))}")
    return AxiomReport(True)


def _has_conformal(table, P: int, N: int, size: int) -> bool:
    for s in _submasks_of_size(P | N, size):
        c = table.get(s)
        if c is None:
            continue
        p, q = c
        if not (p & ~P or q & ~N) or not (q & ~P or p & ~N):
            return True
    return False


@lru_cache(maxsize=None)
def _elimination_plan(n: int, r: int):
    """Sign-independent structure of every weak-elimination instance.

    One row per (circuit i < circuit j, shared element e); candidate rows list,
    for each instance, the circuits whose support fits in (S_i | S_j) - e.
    Candidate rows are grouped by instance so ``reduceat`` can OR them.
    """
    keys = subset_masks(n, r + 1)
    index = {m: k for k, m in enumerate(keys)}
    ei, ej, ee, offsets, cand = [], [], [], [], []
    for i, k1 in enumerate(keys):
        for j in range(i + 1, len(keys)):
            common = k1 & keys[j]
            while common:
                e = common & -common
                common ^= e
                ei.append(i)
                ej.append(j)
                ee.append(e)
                offsets.append(len(cand))
                cand.extend(index[s] for s in _submasks_of_size((k1 | keys[j]) & ~e, r + 1))
    counts = np.diff(np.array(offsets + [len(cand)], dtype=np.int64))
    rows = np.repeat(np.arange(len(ei), dtype=np.int64), counts)
    as_arr = lambda x: np.asarray(x, dtype=np.int64)
    return as_arr(ei), as_arr(ej), as_arr(ee), as_arr(offsets), as_arr(cand), rows


def _eliminate_vectorized(n: int, r: int, pairs) -> AxiomReport:
    ei, ej, ee, offsets, cand, rows = _elimination_plan(n, r)
    if not len(ei):
        return AxiomReport(True)
    pos = np.fromiter((p for p, _ in pairs), dtype=np.int64, count=len(pairs))
    neg = np.fromiter((q for _, q in pairs), dtype=np.int64, count=len(pairs))
    p1, q1, p2, q2 = pos[ei], neg[ei], pos[ej], neg[ej]
    e_in_p1 = (p1 & ee) != 0
    e_in_p2 = (p2 & ee) != 0
    a_p, a_q = np.where(e_in_p1, p1, q1), np.where(e_in_p1, q1, p1)
    b_p, b_q = np.where(e_in_p2, q2, p2), np.where(e_in_p2, p2, q2)
    P = (a_p | b_p) & ~ee
    N = (a_q | b_q) & ~ee
    cp, cq = pos[cand], neg[cand]
    Pr, Nr = P[rows], N[rows]
    ok = (((cp & ~Pr) == 0) & ((cq & ~Nr) == 0)) | (((cq & ~Pr) == 0) & ((cp & ~Nr) == 0))
    found = np.logical_or.reduceat(ok, offsets)
    if found.all():
        return AxiomReport(True)
    k = int(np.argmin(found))
    c1 = SignedSet.from_masks(int(a_p[k]), int(a_q[k]))
    c2 = SignedSet.from_masks(int(b_p[k]), int(b_q[k]))
    return AxiomReport(
        False, "weak elimination",
        f"C1={c1}, C2={c2}, e={int(ee[k]).bit_length()}: no C3 with "
        f"C3+ in {sorted(from_mask(int(P[k])))}, C3- in {sorted(from_mask(int(N[k])))}")
