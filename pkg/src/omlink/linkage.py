"""Linked triangles and three-component link certificates from circuits.

A pair of disjoint triangles is linked when exactly one edge of each pierces
the other, where "edge {d,e} pierces triangle {a,b,c}" means the circuit on
{a,b,c,d,e} is split as {a,b,c} | {d,e}.  The test ignores which side of the
circuit is positive, so the choice of stored representative never matters.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .core import CircuitSet, SignedSet, to_mask, from_mask, subset_masks


@dataclass(frozen=True, order=True)
class Triangle:
    vertices: tuple[int, int, int]

    def __post_init__(self):
        v = tuple(sorted(self.vertices))
        if len(v) != 3 or len(set(v)) != 3:
            raise ValueError(f"a triangle needs three distinct vertices, got {self.vertices}")
        object.__setattr__(self, "vertices", v)

    @classmethod
    def of(cls, vertices: Iterable[int]) -> Triangle:
        return cls(tuple(vertices))

    @property
    def mask(self) -> int:
        return to_mask(self.vertices)

    def edges(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in combinations(self.vertices, 2)]

    def __str__(self):
        return ",".join(map(str, self.vertices))


@dataclass(frozen=True)
class TripleLinkCertificate:
    middle: Triangle
    left: Triangle
    right: Triangle
    # (middle|edge of left), (left|edge of middle), (middle|edge of right), (right|edge of middle)
    witnesses: tuple[SignedSet, SignedSet, SignedSet, SignedSet]

    def triangles(self) -> tuple[Triangle, Triangle, Triangle]:
        return self.middle, self.left, self.right

    def to_dict(self) -> dict:
        return {
            "middle": list(self.middle.vertices),
            "left": list(self.left.vertices),
            "right": list(self.right.vertices),
            "witnesses": [str(w) for w in self.witnesses],
        }

    @classmethod
    def from_dict(cls, d: dict) -> TripleLinkCertificate:
        return cls(Triangle.of(d["middle"]), Triangle.of(d["left"]), Triangle.of(d["right"]),
                   tuple(SignedSet.parse(w) for w in d["witnesses"]))


def _tri_mask(t) -> int:
    return t.mask if isinstance(t, Triangle) else to_mask(t)


@lru_cache(maxsize=None)
def _tables(n: int):
    edges = subset_masks(n, 2)
    edge_bit = {e: 1 << i for i, e in enumerate(edges)}
    tris = subset_masks(n, 3)
    tri_edges = {}
    for t in tris:
        bits = 0
        for e in edges:
            if e & t == e:
                bits |= edge_bit[e]
        tri_edges[t] = bits
    # unordered triples of pairwise disjoint triangles, lexicographic
    triples = []
    for i, a in enumerate(tris):
        for j in range(i + 1, len(tris)):
            b = tris[j]
            if a & b:
                continue
            for c in tris[j + 1:]:
                if not (c & (a | b)):
                    triples.append((a, b, c))
    return edges, edge_bit, tris, tri_edges, tuple(triples)


def piercing_table(circuits: CircuitSet, reorient: int = 0) -> dict[int, int]:
    """Map triangle mask -> bit vector (over edge indices) of piercing edges.

    ``reorient`` is an optional reorientation mask applied on the fly.
    """
    edge_bit = _tables(circuits.n)[1]
    pierce: dict[int, int] = {}
    a = reorient
    for p, q in circuits.table.values():
        if a:
            p, q = (p & ~a) | (q & a), (q & ~a) | (p & a)
        c = p.bit_count()
        if c == 3 and q.bit_count() == 2:
            pierce[p] = pierce.get(p, 0) | edge_bit[q]
        elif c == 2 and q.bit_count() == 3:
            pierce[q] = pierce.get(q, 0) | edge_bit[p]
    return pierce


def _bits_to_edges(n: int, bits: int) -> set[frozenset[int]]:
    edges = _tables(n)[0]
    return {from_mask(e) for i, e in enumerate(edges) if (bits >> i) & 1}


def piercing_edges(circuits: CircuitSet, t) -> set[frozenset[int]]:
    tm = _tri_mask(t)
    return _bits_to_edges(circuits.n, piercing_table(circuits).get(tm, 0))


def _linked(pierce: dict[int, int], tri_edges: dict[int, int], a: int, b: int) -> bool:
    return ((pierce.get(a, 0) & tri_edges[b]).bit_count() == 1
            and (pierce.get(b, 0) & tri_edges[a]).bit_count() == 1)


def piercing_counts(circuits: CircuitSet, t, t2) -> tuple[int, int]:
    """(edges of t2 piercing t, edges of t piercing t2)."""
    a, b = _tri_mask(t), _tri_mask(t2)
    tri_edges = _tables(circuits.n)[3]
    pierce = piercing_table(circuits)
    return ((pierce.get(a, 0) & tri_edges[b]).bit_count(),
            (pierce.get(b, 0) & tri_edges[a]).bit_count())


def triangles_linked(circuits: CircuitSet, t, t2) -> bool:
    a, b = _tri_mask(t), _tri_mask(t2)
    if a & b:
        raise ValueError("triangles must be disjoint")
    return _linked(piercing_table(circuits), _tables(circuits.n)[3], a, b)


def linked_triangle_graph(circuits: CircuitSet) -> dict[Triangle, set[Triangle]]:
    n = circuits.n
    tris = _tables(n)[2]
    tri_edges = _tables(n)[3]
    pierce = piercing_table(circuits)
    adj = {Triangle(tuple(sorted(from_mask(t)))): set() for t in tris}
    objs = {t: Triangle(tuple(sorted(from_mask(t)))) for t in tris}
    for i, a in enumerate(tris):
        for b in tris[i + 1:]:
            if not a & b and _linked(pierce, tri_edges, a, b):
                adj[objs[a]].add(objs[b])
                adj[objs[b]].add(objs[a])
    return adj


def disjoint_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """Unordered triples of pairwise disjoint triangles (280 when n = 9)."""
    return _tables(n)[4]


def _witness(tri: int, edge_bits: int, edges) -> SignedSet:
    e = edges[(edge_bits & -edge_bits).bit_length() - 1]
    return SignedSet.from_masks(tri, e)


def find_triple_link(circuits: CircuitSet, reorient: int = 0) -> TripleLinkCertificate | None:
    """First (middle, left, right) with the middle triangle linked to both others.

    Triples are visited in lexicographic order and, within a triple, each
    triangle is tried as the middle in turn.
    """
    edges, _, _, tri_edges, triples = _tables(circuits.n)
    pierce = piercing_table(circuits, reorient)
    for a, b, c in triples:
        # every triangle of a certificate is pierced by some edge
        if a not in pierce or b not in pierce or c not in pierce:
            continue
        ab = _linked(pierce, tri_edges, a, b)
        ac = _linked(pierce, tri_edges, a, c)
        if ab and ac:
            return _certificate(pierce, tri_edges, edges, a, b, c)
        if not (ab or ac):
            continue
        bc = _linked(pierce, tri_edges, b, c)
        if ab and bc:
            return _certificate(pierce, tri_edges, edges, b, a, c)
        if ac and bc:
            return _certificate(pierce, tri_edges, edges, c, a, b)
    return None


def _certificate(pierce, tri_edges, edges, m, l, r) -> TripleLinkCertificate:
    def tri(x):
        return Triangle(tuple(sorted(from_mask(x))))
    w = (_witness(m, pierce[m] & tri_edges[l], edges),
         _witness(l, pierce[l] & tri_edges[m], edges),
         _witness(m, pierce[m] & tri_edges[r], edges),
         _witness(r, pierce[r] & tri_edges[m], edges))
    return TripleLinkCertificate(tri(m), tri(l), tri(r), w)


def verify_certificate(circuits: CircuitSet, cert: TripleLinkCertificate) -> bool:
    """Re-check a certificate: disjointness, both links, and the witness circuits."""
    m, l, r = cert.middle.mask, cert.left.mask, cert.right.mask
    if m & l or m & r or l & r:
        return False
    if not (triangles_linked(circuits, cert.middle, cert.left)
            and triangles_linked(circuits, cert.middle, cert.right)):
        return False
    for w in cert.witnesses:
        p, q = w.masks
        if circuits.table.get(p | q) not in ((p, q), (q, p)):
            return False
    return True
