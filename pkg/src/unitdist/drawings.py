"""Concrete drawings and their exact crossing statistics.

Straight-line drawings use exact coordinates (rationals or tower elements);
every predicate (orientation, segment crossing, triple-point coincidence)
is decided exactly, and degeneracies the drawing model excludes are raised
as errors naming their witnesses, never repaired silently.

The circle-arrangement side turns a certified unit-distance graph into the
multigraph of circular arcs cut by the incident points, with intersections
accounted combinatorially from center distances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Optional, Sequence

from .fields import ConstructibleNumber
from .geometry import Point, UnitDistanceGraph, compare_sq_dist


class DrawingError(ValueError):
    pass


class DegenerateDrawingError(DrawingError):
    """Drawing violates the model (overlaps, vertex on edge, triple point)."""


def _sgn(value) -> int:
    if isinstance(value, ConstructibleNumber):
        return value.sign()
    return (value > 0) - (value < 0)


def _orient(a: Point, b: Point, c: Point) -> int:
    return _sgn((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def _strictly_between(p: Point, a: Point, b: Point) -> bool:
    """p strictly inside segment ab, assuming a, b, p collinear."""
    t1 = _sgn((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y))
    t2 = _sgn((p.x - b.x) * (a.x - b.x) + (p.y - b.y) * (a.y - b.y))
    return t1 > 0 and t2 > 0


# ---------------------------------------------------------------------------
# straight-line drawings
# ---------------------------------------------------------------------------

@dataclass
class StraightLineDrawing:
    points: list
    edges: list

    def __post_init__(self):
        n = len(self.points)
        self.edges = [tuple(sorted(e)) for e in self.edges]
        if len(set(self.edges)) != len(self.edges):
            raise DrawingError("repeated edges")
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                raise DrawingError(f"edge ({a},{b}) out of range")
            if a == b:
                raise DrawingError(f"loop at vertex {a}")
        for i, j in combinations(range(n), 2):
            if _sgn(self.points[i].x - self.points[j].x) == 0 and _sgn(
                self.points[i].y - self.points[j].y
            ) == 0:
                raise DrawingError(f"vertices {i} and {j} coincide")
        self._check_vertex_on_edge()
        self._check_overlaps()

    def _check_vertex_on_edge(self):
        for a, b in self.edges:
            pa, pb = self.points[a], self.points[b]
            for v in range(len(self.points)):
                if v in (a, b):
                    continue
                p = self.points[v]
                if _orient(pa, pb, p) == 0 and _strictly_between(p, pa, pb):
                    raise DegenerateDrawingError(
                        f"vertex {v} lies inside edge ({a},{b})"
                    )

    def _check_overlaps(self):
        for e, f in combinations(self.edges, 2):
            a, b = e
            c, d = f
            pa, pb, pc, pd = (self.points[i] for i in (a, b, c, d))
            if _orient(pa, pb, pc) == 0 and _orient(pa, pb, pd) == 0:
                # collinear pair: forbid sharing more than one point
                shared = len(set(e) & set(f))
                if shared == 2:
                    continue
                if (
                    _strictly_between(pc, pa, pb)
                    or _strictly_between(pd, pa, pb)
                    or _strictly_between(pa, pc, pd)
                    or _strictly_between(pb, pc, pd)
                ):
                    raise DegenerateDrawingError(
                        f"edges ({a},{b}) and ({c},{d}) overlap in a segment"
                    )

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.edges)


def _proper_crossing(pa, pb, pc, pd) -> bool:
    o1 = _orient(pa, pb, pc)
    o2 = _orient(pa, pb, pd)
    o3 = _orient(pc, pd, pa)
    o4 = _orient(pc, pd, pb)
    return o1 * o2 < 0 and o3 * o4 < 0


def _crossing_coordinates(pa, pb, pc, pd):
    denom = (pb.x - pa.x) * (pd.y - pc.y) - (pb.y - pa.y) * (pd.x - pc.x)
    tnum = (pc.x - pa.x) * (pd.y - pc.y) - (pc.y - pa.y) * (pd.x - pc.x)
    if isinstance(denom, ConstructibleNumber):
        t = tnum / denom
    else:
        t = Fraction(tnum, denom)
    return (pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y))


@dataclass
class CrossingReport:
    total: int
    per_edge: list
    crossing_pairs: list


def count_crossings_straightline(drawing: StraightLineDrawing) -> CrossingReport:
    """Exact crossing count with per-edge tallies.

    Edge pairs sharing an endpoint cannot properly cross (overlaps were
    rejected at construction).  Three edges through one interior point
    violate the drawing model and raise, naming the witnesses.
    """
    m = drawing.m
    per_edge = [0] * m
    pairs = []
    locations = []
    for (ei, e), (fi, f) in combinations(enumerate(drawing.edges), 2):
        if set(e) & set(f):
            continue
        pa, pb = drawing.points[e[0]], drawing.points[e[1]]
        pc, pd = drawing.points[f[0]], drawing.points[f[1]]
        if _proper_crossing(pa, pb, pc, pd):
            per_edge[ei] += 1
            per_edge[fi] += 1
            pairs.append((ei, fi))
            locations.append(_crossing_coordinates(pa, pb, pc, pd))
    for i, j in combinations(range(len(locations)), 2):
        xi, yi = locations[i]
        xj, yj = locations[j]
        if _sgn(xi - xj) == 0 and _sgn(yi - yj) == 0:
            raise DegenerateDrawingError(
                f"three edges meet at one point: pairs {pairs[i]} and {pairs[j]}"
            )
    return CrossingReport(total=len(pairs), per_edge=per_edge, crossing_pairs=pairs)


def harmonic_sum(per_edge_counts: Sequence[int]) -> Fraction:
    """Sum of 1/(x(e)+1) over the edges; equals m exactly for planar input."""
    return sum((Fraction(1, x + 1) for x in per_edge_counts), Fraction(0))


def harmonic_sum_of(drawing: StraightLineDrawing) -> Fraction:
    return harmonic_sum(count_crossings_straightline(drawing).per_edge)


def caro_wei_planar_subgraph(drawing: StraightLineDrawing, seed,
                             report: Optional[CrossingReport] = None) -> list:
    """Edges that precede all their crossing partners in a seeded random
    order; the result is crossing-free within the drawing.

    Passing a precomputed crossing report skips the geometry; repeated
    trials over one drawing then cost only the shuffle.
    """
    if report is None:
        report = count_crossings_straightline(drawing)
    rng = random.Random(f"caro-wei-{seed}")
    order = list(range(drawing.m))
    rng.shuffle(order)
    position = [0] * drawing.m
    for pos, e in enumerate(order):
        position[e] = pos
    partners = {e: set() for e in range(drawing.m)}
    for ei, fi in report.crossing_pairs:
        partners[ei].add(fi)
        partners[fi].add(ei)
    kept = [
        e for e in range(drawing.m)
        if all(position[e] < position[f] for f in partners[e])
    ]
    kept_set = set(kept)
    for ei, fi in report.crossing_pairs:
        assert not (ei in kept_set and fi in kept_set), "kept edges cross"
    return [drawing.edges[e] for e in kept]


# ---------------------------------------------------------------------------
# abstract drawings and thickening
# ---------------------------------------------------------------------------

@dataclass
class AbstractDrawing:
    """Combinatorial drawing data: a multigraph edge list plus a crossing
    multiset on edge indices."""

    edges: list
    crossings: dict = field(default_factory=dict)

    def __post_init__(self):
        self.edges = [tuple(e) for e in self.edges]
        for u, v in self.edges:
            if u == v:
                raise DrawingError("loops are not allowed")
        normalized = {}
        for (i, j), count in self.crossings.items():
            if i == j:
                raise DrawingError("edge cannot cross itself")
            if count < 0:
                raise DrawingError("negative crossing count")
            if not (0 <= i < len(self.edges) and 0 <= j < len(self.edges)):
                raise DrawingError("crossing pair out of range")
            key = (min(i, j), max(i, j))
            normalized[key] = normalized.get(key, 0) + count
        self.crossings = normalized

    @property
    def m(self) -> int:
        return len(self.edges)

    def total_crossings(self) -> int:
        return sum(self.crossings.values())

    def multiplicity(self) -> int:
        counts = {}
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            counts[key] = counts.get(key, 0) + 1
        return max(counts.values(), default=0)


def thicken(drawing: AbstractDrawing, k: int) -> AbstractDrawing:
    """Replace each edge by k close parallel copies.

    Each original crossing becomes k*k crossings; copies of one edge never
    cross each other.  Crossings between parallel edges cannot be replicated
    close and are rejected.
    """
    if k < 1:
        raise DrawingError("k must be >= 1")
    for (i, j), count in drawing.crossings.items():
        if count and set(drawing.edges[i]) == set(drawing.edges[j]):
            raise DrawingError(
                f"parallel edges {i} and {j} cross; close replication impossible"
            )
    edges = []
    for e in drawing.edges:
        edges.extend([e] * k)
    crossings = {}
    for (i, j), count in drawing.crossings.items():
        if count == 0:
            continue
        for a in range(k):
            for b in range(k):
                crossings[(i * k + a, j * k + b)] = count
    return AbstractDrawing(edges=edges, crossings=crossings)


# ---------------------------------------------------------------------------
# the circle-arc multigraph of a unit-distance graph
# ---------------------------------------------------------------------------

def _angular_order(center: Point, neighbors: list, points: list) -> list:
    """Neighbor indices sorted counterclockwise around the center, exactly."""

    def half(v) -> int:
        dx = points[v].x - center.x
        dy = points[v].y - center.y
        sy = _sgn(dy)
        if sy > 0 or (sy == 0 and _sgn(dx) > 0):
            return 0
        return 1

    def compare(u, v) -> int:
        hu, hv = half(u), half(v)
        if hu != hv:
            return -1 if hu < hv else 1
        ux = points[u].x - center.x
        uy = points[u].y - center.y
        vx = points[v].x - center.x
        vy = points[v].y - center.y
        cross = _sgn(ux * vy - uy * vx)
        if cross == 0:
            raise DrawingError("angular tie between distinct unit-circle points")
        return -1 if cross > 0 else 1

    return sorted(neighbors, key=cmp_to_key(compare))


@dataclass
class Arc:
    start: int
    end: int
    circle: int


@dataclass
class ArcMultigraph:
    graph: UnitDistanceGraph
    arcs: list
    multiplicity: dict
    low_degree_vertices: list

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def max_multiplicity(self) -> int:
        return max(self.multiplicity.values(), default=0)


def build_arc_multigraph(graph: UnitDistanceGraph) -> ArcMultigraph:
    """Cut every unit circle at its incident points; arcs become the edges.

    A circle through fewer than two points contributes no arcs and flags its
    center; the multiplicity-2 guarantee needs minimum degree 3, so smaller
    degrees flag too.  With all degrees >= 2 the arc count is exactly the
    degree sum.
    """
    if graph.mode != "exact":
        raise DrawingError("arc construction requires an exactly certified graph")
    arcs = []
    multiplicity: dict = {}
    flagged = []
    for v in range(graph.n):
        nbrs = sorted(graph.adjacency[v])
        if len(nbrs) < 3:
            flagged.append(v)
        if len(nbrs) < 2:
            continue
        ordered = _angular_order(graph.points[v], nbrs, graph.points)
        deg = len(ordered)
        for idx in range(deg):
            a = ordered[idx]
            b = ordered[(idx + 1) % deg]
            arcs.append(Arc(start=a, end=b, circle=v))
            key = (min(a, b), max(a, b))
            multiplicity[key] = multiplicity.get(key, 0) + 1
    degs = [len(graph.adjacency[v]) for v in range(graph.n)]
    expected = sum(d for d in degs if d >= 2)
    assert len(arcs) == expected
    if all(d >= 2 for d in degs):
        assert len(arcs) == 2 * graph.m
    return ArcMultigraph(
        graph=graph, arcs=arcs, multiplicity=multiplicity, low_degree_vertices=flagged
    )


@dataclass
class CircleStats:
    total_intersections: int
    tangencies: int
    at_vertices: int
    sum_choose2: int
    budget: int

    @property
    def arc_crossing_budget(self) -> int:
        return self.total_intersections - self.at_vertices


def circle_crossing_stats(graph: UnitDistanceGraph) -> CircleStats:
    """Pairwise unit-circle intersections, classified by center distance.

    Vertex-located intersections are common unit neighbors that are
    themselves input points, which by edge maximality is the adjacency count
    through each vertex: their total equals sum over v of C(deg(v), 2).
    """
    if graph.mode != "exact":
        raise DrawingError("circle statistics require an exactly certified graph")
    points = graph.points
    total = 0
    tangencies = 0
    at_vertices = 0
    for u, w in combinations(range(graph.n), 2):
        cls = compare_sq_dist(points[u], points[w], Fraction(4))
        if cls < 0:
            count = 2
        elif cls == 0:
            count = 1
            tangencies += 1
        else:
            count = 0
        common = len(graph.adjacency[u] & graph.adjacency[w])
        if common > count:
            raise DrawingError(
                f"centers {u},{w} have {common} common neighbors but {count} intersections"
            )
        total += count
        at_vertices += common
    stats = graph.degree_stats()
    assert at_vertices == stats.sum_choose2
    budget = graph.n * graph.n - graph.n
    assert total <= budget
    return CircleStats(
        total_intersections=total,
        tangencies=tangencies,
        at_vertices=at_vertices,
        sum_choose2=stats.sum_choose2,
        budget=budget,
    )


# ---------------------------------------------------------------------------
# drawing file interface
# ---------------------------------------------------------------------------

def load_drawing(path) -> StraightLineDrawing:
    """Read {positions: [[x, y], ...], edges: [[i, j], ...]} with exact
    rational coordinates (decimal literals or "p/q" strings)."""
    import json

    with open(path) as handle:
        raw = json.load(handle, parse_float=Fraction)

    def coerce(value):
        return Fraction(value) if not isinstance(value, Fraction) else value

    points = [Point.approximate(coerce(x), coerce(y)) for x, y in raw["positions"]]
    edges = [tuple(e) for e in raw["edges"]]
    return StraightLineDrawing(points=points, edges=edges)


def drawing_report(drawing: StraightLineDrawing, seeds=None) -> dict:
    """JSON-ready crossing report: totals, per-edge counts, harmonic sum,
    and seeded random-planarization sizes."""
    report = count_crossings_straightline(drawing)
    h = harmonic_sum(report.per_edge)
    out = {
        "n": drawing.n,
        "m": drawing.m,
        "crossings": report.total,
        "per_edge": report.per_edge,
        "harmonic_sum": str(h),
        "planar_budget": 3 * drawing.n - 6,
    }
    if seeds is not None:
        out["planarization_sizes"] = {
            str(seed): len(caro_wei_planar_subgraph(drawing, seed, report))
            for seed in seeds
        }
    return out


@dataclass
class PropositionReport:
    lhs: int
    rhs: int
    holds: bool
    min_degree: int
    flagged: bool

    @property
    def slack(self) -> int:
        return self.lhs - self.rhs


def check_proposition_inequality(graph: UnitDistanceGraph) -> PropositionReport:
    """n^2 - n >= 4m - 12n + 24 + sum C(deg, 2) with the actual degrees.

    Minimum degree below 3 voids the derivation's context; the inequality is
    still reported, flagged as informational.
    """
    stats = graph.degree_stats()
    lhs = graph.n * graph.n - graph.n
    rhs = 4 * graph.m - 12 * graph.n + 24 + stats.sum_choose2
    return PropositionReport(
        lhs=lhs,
        rhs=rhs,
        holds=lhs >= rhs,
        min_degree=stats.min_degree,
        flagged=stats.min_degree < 3,
    )
