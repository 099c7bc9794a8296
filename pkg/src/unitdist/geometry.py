"""Planar point sets and their unit-distance graphs, decided exactly.

Exact points carry :class:`~unitdist.fields.ConstructibleNumber` coordinates,
so "distance equals one" is a decidable predicate and the derived graph is a
certificate, not an approximation.  Approximate points carry plain rationals
(typically decimal transcriptions) and only ever yield tolerance-checked
edges plus an explicit ambiguity list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .fields import ConstructibleNumber, rational, sqrt_extend, to_interval

Coord = Union[ConstructibleNumber, Fraction]

EXACT = "exact"
APPROXIMATE = "approximate"

DEFAULT_AMBIGUITY_BAND = Fraction(1, 200)  # 0.005 on distance


class GeometryError(ValueError):
    pass


class DuplicatePointError(GeometryError):
    pass


@dataclass(frozen=True, eq=False)
class Point:
    """A planar point; mode is inferred from the coordinate type."""

    x: Coord
    y: Coord

    @staticmethod
    def exact(x, y) -> "Point":
        if not isinstance(x, ConstructibleNumber):
            x = rational(Fraction(x))
        if not isinstance(y, ConstructibleNumber):
            y = rational(Fraction(y))
        return Point(x, y)

    @staticmethod
    def approximate(x, y) -> "Point":
        return Point(Fraction(x), Fraction(y))

    @property
    def mode(self) -> str:
        return EXACT if isinstance(self.x, ConstructibleNumber) else APPROXIMATE

    def same_location(self, other: "Point") -> bool:
        return (self.x == other.x) and (self.y == other.y)

    def __repr__(self) -> str:
        return f"Point({self.x!r}, {self.y!r})"


def sq_dist(p: Point, q: Point):
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def _sq_dist_interval(p: Point, q: Point, precision: int):
    ax = p.x.interval(precision)
    ay = p.y.interval(precision)
    bx = q.x.interval(precision)
    by = q.y.interval(precision)
    dx = (ax[0] - bx[1], ax[1] - bx[0])
    dy = (ay[0] - by[1], ay[1] - by[0])

    def sq(iv):
        lo, hi = iv
        if lo >= 0:
            return (lo * lo, hi * hi)
        if hi <= 0:
            return (hi * hi, lo * lo)
        return (Fraction(0), max(lo * lo, hi * hi))

    sx, sy = sq(dx), sq(dy)
    return (sx[0] + sy[0], sx[1] + sy[1])


def compare_sq_dist(p: Point, q: Point, target: Fraction, precision: int = 48) -> int:
    """Sign of |pq|^2 - target; interval pre-filter, exact fall-back."""
    if p.mode == EXACT:
        lo, hi = _sq_dist_interval(p, q, precision)
        if lo > target:
            return 1
        if hi < target:
            return -1
        return (sq_dist(p, q) - target).sign()
    d = sq_dist(p, q) - target
    return (d > 0) - (d < 0)


# ---------------------------------------------------------------------------
# unit-distance graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeStats:
    degrees: tuple
    min_degree: int
    max_degree: int
    sum_choose2: int


class UnitDistanceGraph:
    """Point set plus the derived (or tolerance-checked) unit-distance edges."""

    def __init__(self, points, edges, mode, certificates, ambiguous=()):
        self.points = list(points)
        self.edges = sorted(tuple(sorted(e)) for e in edges)
        self.mode = mode
        self.certificates = dict(certificates)
        self.ambiguous = list(ambiguous)
        self.n = len(self.points)
        self.m = len(self.edges)
        adj = {i: set() for i in range(self.n)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        self.adjacency = adj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degree_stats(self) -> DegreeStats:
        degs = tuple(len(self.adjacency[v]) for v in range(self.n))
        assert sum(degs) == 2 * self.m
        return DegreeStats(
            degrees=degs,
            min_degree=min(degs) if degs else 0,
            max_degree=max(degs) if degs else 0,
            sum_choose2=sum(d * (d - 1) // 2 for d in degs),
        )

    def contains_k23(self):
        return contains_k23(self.n, self.edges)

    def contains_k4(self):
        return contains_k4(self.n, self.edges)


def unit_distance_graph(
    points: Sequence[Point],
    mode: str = EXACT,
    tol: Optional[Fraction] = None,
    ambiguity_band: Fraction = DEFAULT_AMBIGUITY_BAND,
) -> UnitDistanceGraph:
    """Derive the unit-distance graph of a point set.

    Exact mode: an edge is present iff the squared distance is exactly 1.
    Approximate mode: an edge needs |d^2 - 1| <= 2*tol + tol^2 (a tolerance
    of ``tol`` on the distance itself); any non-edge whose distance falls
    within ``ambiguity_band`` of 1 is reported in ``ambiguous`` instead of
    being silently classified.
    """
    points = list(points)
    n = len(points)
    if mode == EXACT:
        if any(p.mode != EXACT for p in points):
            raise GeometryError("exact mode requires exact points")
        for i, j in combinations(range(n), 2):
            if compare_sq_dist(points[i], points[j], Fraction(0)) == 0:
                raise DuplicatePointError(f"points {i} and {j} coincide")
        edges = []
        for i, j in combinations(range(n), 2):
            if compare_sq_dist(points[i], points[j], Fraction(1)) == 0:
                edges.append((i, j))
        certs = {e: EXACT for e in edges}
        return UnitDistanceGraph(points, edges, EXACT, certs)

    if mode != APPROXIMATE:
        raise GeometryError(f"unknown mode {mode!r}")
    if tol is None or tol <= 0:
        raise GeometryError("approximate mode requires a positive tolerance")
    tol = Fraction(tol)
    band = Fraction(ambiguity_band)
    if any(p.mode != APPROXIMATE for p in points):
        raise GeometryError("approximate mode requires rational-coordinate points")
    sep2 = 4 * tol * tol
    for i, j in combinations(range(n), 2):
        if sq_dist(points[i], points[j]) <= sep2:
            raise DuplicatePointError(
                f"points {i} and {j} are not separated by more than 2*tol"
            )
    edge_slack = 2 * tol + tol * tol
    lo_band, hi_band = (1 - band) ** 2, (1 + band) ** 2
    edges, ambiguous = [], []
    for i, j in combinations(range(n), 2):
        d2 = sq_dist(points[i], points[j])
        if abs(d2 - 1) <= edge_slack:
            edges.append((i, j))
        elif lo_band <= d2 <= hi_band:
            ambiguous.append((i, j))
    certs = {e: (APPROXIMATE, tol) for e in edges}
    return UnitDistanceGraph(points, edges, APPROXIMATE, certs, ambiguous)


# ---------------------------------------------------------------------------
# circle-circle intersection
# ---------------------------------------------------------------------------

def two_circle_points(c1: Point, r1_sq, c2: Point, r2_sq) -> list[Point]:
    """Exact intersection points of circles around c1, c2 with squared radii.

    Returns 2, 1 (tangency) or 0 points; coordinates may live in a quadratic
    extension of the input tower.
    """
    if c1.mode != EXACT or c2.mode != EXACT:
        raise GeometryError("circle intersection requires exact points")
    if not isinstance(r1_sq, ConstructibleNumber):
        r1_sq = rational(Fraction(r1_sq))
    if not isinstance(r2_sq, ConstructibleNumber):
        r2_sq = rational(Fraction(r2_sq))
    ex = c2.x - c1.x
    ey = c2.y - c1.y
    s = ex * ex + ey * ey
    if s.is_zero():
        raise GeometryError("concentric circles")
    a = (s + r1_sq - r2_sq) / (2 * s)
    h2 = r1_sq / s - a * a
    sgn = h2.sign()
    foot = Point(c1.x + a * ex, c1.y + a * ey)
    if sgn < 0:
        return []
    if sgn == 0:
        return [foot]
    _, t = sqrt_extend(h2)
    return [
        Point(foot.x - t * ey, foot.y + t * ex),
        Point(foot.x + t * ey, foot.y - t * ex),
    ]


def common_unit_neighbors(p: Point, q: Point):
    """Points at distance exactly 1 from both p and q: (count, witnesses).

    Two points when 0 < |pq| < 2, one at tangency |pq| = 2, none beyond.
    """
    if p.same_location(q):
        raise GeometryError("coincident points have infinitely many common neighbors")
    witnesses = two_circle_points(p, 1, q, 1)
    return len(witnesses), witnesses


# ---------------------------------------------------------------------------
# forbidden subgraphs
# ---------------------------------------------------------------------------

def _adjacency(n: int, edges) -> dict:
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def contains_k23(n: int, edges):
    """K_{2,3} subgraph test: two vertices with three common neighbors."""
    adj = _adjacency(n, edges)
    for u, w in combinations(range(n), 2):
        common = adj[u] & adj[w]
        if len(common) >= 3:
            return True, (u, w, tuple(sorted(common))[:3])
    return False, None


def contains_k4(n: int, edges):
    """4-clique subgraph test by exhaustive scan."""
    adj = _adjacency(n, edges)
    verts = [v for v in range(n) if len(adj[v]) >= 3]
    for quad in combinations(verts, 4):
        a, b, c, d = quad
        if (
            b in adj[a] and c in adj[a] and d in adj[a]
            and c in adj[b] and d in adj[b] and d in adj[c]
        ):
            return True, quad
    return False, None


def jensen_degree_floor(n: int, m: int) -> int:
    """Minimum of sum C(d_i, 2) over integer degree sequences with sum 2m.

    Attained by near-balanced degrees: with 2m = q*n + r, use r vertices of
    degree q+1 and n-r of degree q.  Exact integer arithmetic throughout.
    """
    if n < 1:
        raise GeometryError("need at least one vertex")
    if m < 0:
        raise GeometryError("edge count must be nonnegative")
    q, r = divmod(2 * m, n)
    choose2 = lambda k: k * (k - 1) // 2
    return (n - r) * choose2(q) + r * choose2(q + 1)
