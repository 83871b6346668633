"""Exact point-configuration predicates: the geometric ground truth.

Everything here runs on Python integers and ``fractions.Fraction``; there is
no floating point on any decision path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import Chirotope, SignedSet, subset_masks, mask_elements

Point = tuple[int, int, int]


class DegeneracyError(ValueError):
    """Points are not in general position for the requested predicate."""


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        if any(len(p) != 3 for p in pts):
            raise ValueError("points must have three coordinates")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def __getitem__(self, label: int) -> Point:
        return self.points[label - 1]

    def labelled(self, labels) -> list[Point]:
        return [self.points[k - 1] for k in labels]

    def translated(self, v: Sequence[int]) -> PointConfiguration:
        return PointConfiguration(tuple((x + v[0], y + v[1], z + v[2]) for x, y, z in self.points))


@dataclass(frozen=True)
class AffineCircuit:
    circuit: SignedSet
    coefficients: dict[int, Fraction]


def _det3(a, b, c) -> int:
    """Determinant of the 3x3 matrix with columns a, b, c."""
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - b[0] * (a[1] * c[2] - a[2] * c[1])
            + c[0] * (a[1] * b[2] - a[2] * b[1]))


def orientation_det(p1: Point, p2: Point, p3: Point, p4: Point) -> int:
    """det [p4-p1 | p4-p2 | p4-p3] for points given in ascending label order."""
    v1 = (p4[0] - p1[0], p4[1] - p1[1], p4[2] - p1[2])
    v2 = (p4[0] - p2[0], p4[1] - p2[1], p4[2] - p2[2])
    v3 = (p4[0] - p3[0], p4[1] - p3[1], p4[2] - p3[2])
    return _det3(v1, v2, v3)


def orient3d(a: Point, b: Point, c: Point, d: Point) -> int:
    """Sign-bearing volume det [b-a | c-a | d-a]."""
    u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
    v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
    w = (d[0] - a[0], d[1] - a[1], d[2] - a[2])
    return _det3(u, v, w)


def chirotope_from_points(config: PointConfiguration) -> Chirotope:
    n = config.n
    if n < 4:
        raise ValueError("need at least four points")
    bits = 0
    for i, m in enumerate(subset_masks(n, 4)):
        labels = mask_elements(m)
        d = orientation_det(*config.labelled(labels))
        if d == 0:
            raise DegeneracyError(f"points {list(labels)} are coplanar")
        if d < 0:
            bits |= 1 << i
    return Chirotope(n, 4, bits)


def is_general_position(config: PointConfiguration) -> bool:
    return all(orientation_det(*q) != 0 for q in combinations(config.points, 4))


def _nullspace_vector(rows: list[list[Fraction]], ncols: int) -> list[Fraction]:
    """Exact Gaussian elimination; returns the basis vector of a 1-dim kernel."""
    m = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise DegeneracyError(f"solution space has dimension {len(free)}")
    f = free[0]
    x = [Fraction(0)] * ncols
    x[f] = Fraction(1)
    for i, c in enumerate(pivots):
        x[c] = -m[i][f]
    return x


def radon_partition(points: Sequence[Point], labels: Sequence[int] | None = None) -> AffineCircuit:
    """Solve sum a(x) x = 0, sum a(x) = 0 for five points.

    The coefficients are scaled so the last one is 1.
    """
    if len(points) != 5:
        raise ValueError("radon_partition needs exactly five points")
    if labels is None:
        labels = range(1, 6)
    labels = list(labels)
    rows = [[Fraction(p[k]) for p in points] for k in range(3)]
    rows.append([Fraction(1)] * 5)
    alpha = _nullspace_vector(rows, 5)
    if any(a == 0 for a in alpha):
        raise DegeneracyError(f"zero coefficient in dependency of {labels}")
    scale = alpha[-1]
    alpha = [a / scale for a in alpha]
    pos = frozenset(l for l, a in zip(labels, alpha) if a > 0)
    neg = frozenset(l for l, a in zip(labels, alpha) if a < 0)
    return AffineCircuit(SignedSet(pos, neg), dict(zip(labels, alpha)))


def radon_circuits(config: PointConfiguration) -> dict[frozenset[int], SignedSet]:
    out = {}
    for m in subset_masks(config.n, 5):
        labels = mask_elements(m)
        out[frozenset(labels)] = radon_partition(config.labelled(labels), labels).circuit
    return out


def segment_pierces_triangle(edge: Sequence[Point], tri: Sequence[Point]) -> bool:
    """Open segment meets the open triangle, decided by orientation signs."""
    d, e = edge
    a, b, c = tri
    sd = orient3d(a, b, c, d)
    se = orient3d(a, b, c, e)
    if sd == 0 or se == 0:
        raise DegeneracyError("segment endpoint coplanar with triangle")
    if (sd > 0) == (se > 0):
        return False
    s1 = orient3d(d, e, a, b)
    s2 = orient3d(d, e, b, c)
    s3 = orient3d(d, e, c, a)
    if s1 == 0 or s2 == 0 or s3 == 0:
        raise DegeneracyError("segment line meets a triangle edge line")
    return (s1 > 0) == (s2 > 0) == (s3 > 0)


def piercing_count(t: Sequence[Point], t2: Sequence[Point]) -> int:
    """Number of edges of ``t`` that pierce the convex hull of ``t2``."""
    return sum(segment_pierces_triangle((t[i], t[j]), t2) for i, j in ((0, 1), (0, 2), (1, 2)))


def geometric_linked(t: Sequence[Point], t2: Sequence[Point]) -> bool:
    c1 = piercing_count(t, t2)
    c2 = piercing_count(t2, t)
    # Three edges of one triangle cannot all cross the other in general position.
    assert c1 < 3 and c2 < 3, (c1, c2)
    assert (c1 == 1) == (c2 == 1), (c1, c2)
    return c1 == 1 and c2 == 1


def linking_parity(t: Sequence[Point], t2: Sequence[Point]) -> int:
    return piercing_count(t, t2) % 2


def random_general_position(n: int, seed: int, box: int = 100,
                            max_tries: int = 10_000) -> PointConfiguration:
    """Seeded integer points in [0, box]^3 with no four coplanar.

    Points are drawn one at a time; a draw that is coplanar with any three
    earlier points is redrawn.
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    rng = np.random.default_rng(seed)
    pts: list[Point] = []
    tries = 0
    while len(pts) < n:
        p = tuple(int(v) for v in rng.integers(0, box + 1, size=3))
        tries += 1
        if tries > max_tries:
            raise GenerationError(
                f"no general-position configuration after {max_tries} draws; use a larger box")
        if p in pts:
            continue
        if len(pts) >= 3 and any(orient3d(a, b, c, p) == 0 for a, b, c in combinations(pts, 3)):
            continue
        if len(pts) == 2 and _collinear(pts[0], pts[1], p):
            continue
        pts.append(p)
    return PointConfiguration(tuple(pts))


def _collinear(a: Point, b: Point, c: Point) -> bool:
    u = [b[i] - a[i] for i in range(3)]
    v = [c[i] - a[i] for i in range(3)]
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]) == (0, 0, 0)


def moment_curve(n: int) -> PointConfiguration:
    return PointConfiguration(tuple((t, t * t, t ** 3) for t in range(1, n + 1)))


def read_points(path: str | Path) -> PointConfiguration:
    """One point per line, three integers; '#' lines and blank lines skipped."""
    pts = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected three integers, got {s!r}")
        try:
            pts.append(tuple(int(x) for x in parts))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: non-integer coordinate in {s!r}") from exc
    return PointConfiguration(tuple(pts))


def write_points(config: PointConfiguration, path: str | Path) -> None:
    Path(path).write_text("".join(f"{x} {y} {z}\n" for x, y, z in config.points))
