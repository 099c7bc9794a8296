"""Catalog of lower-bound point constructions and their certification.

Each record carries transcribed 2-decimal coordinates and the segment list
of the published figure.  Verification is two-tier:

* :func:`verify_approx` checks every claimed edge against a distance
  tolerance over exact rationals; it can fail a record but never certify one.
* :func:`realize_exact` rebuilds exact coordinates by propagating
  circle-circle intersections from a seed edge, consulting high-precision
  numerics only to pick branches and to recognise hinge distances when the
  plain two-neighbor propagation stalls.  A record is certified only after
  every claimed edge is re-checked exactly and the full unit-distance graph
  is re-derived from the exact points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

import mpmath as mp

from .fields import parse_expression, to_expression
from .geometry import (
    DuplicatePointError,
    Point,
    compare_sq_dist,
    sq_dist,
    two_circle_points,
    unit_distance_graph,
)
from .refine import RefinedFrame, detect_mirror_involution, recognize_square_distance

DEFAULT_TOLERANCE = Fraction(1, 50)  # 0.02 on distance
DEFAULT_BAND = Fraction(1, 200)

EXACT_CERTIFIED = "exact_certified"
APPROXIMATE_ONLY = "approximate_only"
FAILED = "failed"


class CatalogError(ValueError):
    pass


@dataclass
class ConstructionRecord:
    id: str
    n: int
    coords: list
    edges: list
    claimed_count: int
    provenance: str = ""
    exact_coords: Optional[list] = None


@dataclass
class ApproxReport:
    record_id: str
    tolerance: Fraction
    ok: bool
    checked_edges: int
    worst_sq_error: Fraction
    failures: list
    ambiguous: list


@dataclass
class RealizationResult:
    record_id: str
    status: str
    exact_points: Optional[list] = None
    placement_order: list = field(default_factory=list)
    flexible: list = field(default_factory=list)
    failed_edge: Optional[tuple] = None
    derived_count: Optional[int] = None
    bonus_edges: list = field(default_factory=list)
    hinge_placements: int = 0
    tower_depth: int = 0
    tie_break_flags: list = field(default_factory=list)
    note: str = ""

    def derived_graph(self):
        if self.exact_points is None:
            return None
        return unit_distance_graph(self.exact_points)


# ---------------------------------------------------------------------------
# catalog file format
# ---------------------------------------------------------------------------

def _as_fraction(value, rec_id: str, fieldname: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise CatalogError(f"record {rec_id}: bad rational in {fieldname}: {value!r}") from exc
    raise CatalogError(f"record {rec_id}: bad value type in {fieldname}: {value!r}")


def _validate(rec: ConstructionRecord):
    rid = rec.id
    if rec.n < 1:
        raise CatalogError(f"record {rid}: field n must be >= 1")
    if len(rec.coords) != rec.n:
        raise CatalogError(f"record {rid}: field coords has {len(rec.coords)} entries, n = {rec.n}")
    seen = set()
    for e in rec.edges:
        if len(e) != 2:
            raise CatalogError(f"record {rid}: field edges contains non-pair {e!r}")
        a, b = e
        if not (0 <= a < rec.n and 0 <= b < rec.n):
            raise CatalogError(f"record {rid}: field edges references vertex out of range: {e!r}")
        if a == b:
            raise CatalogError(f"record {rid}: field edges contains a loop: {e!r}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise CatalogError(f"record {rid}: field edges contains duplicate: {e!r}")
        seen.add(key)
    if rec.claimed_count != len(rec.edges):
        raise CatalogError(
            f"record {rid}: field claimed_count is {rec.claimed_count}, edges has {len(rec.edges)}"
        )
    if rec.exact_coords is not None and len(rec.exact_coords) != rec.n:
        raise CatalogError(f"record {rid}: field exact_coords has wrong length")


def load_catalog(path=None) -> list[ConstructionRecord]:
    """Load construction records; defaults to the shipped catalog."""
    if path is None:
        text = resources.files("unitdist.data").joinpath("catalog.json").read_text()
    else:
        with open(path) as handle:
            text = handle.read()
    raw = json.loads(text, parse_float=Fraction)
    records = []
    ids = set()
    for entry in raw:
        rid = entry.get("id")
        if not rid or rid in ids:
            raise CatalogError(f"missing or duplicate record id: {rid!r}")
        ids.add(rid)
        coords = [
            (_as_fraction(x, rid, "coords"), _as_fraction(y, rid, "coords"))
            for x, y in entry["coords"]
        ]
        edges = [tuple(sorted((int(a), int(b)))) for a, b in entry["edges"]]
        rec = ConstructionRecord(
            id=rid,
            n=int(entry["n"]),
            coords=coords,
            edges=edges,
            claimed_count=int(entry["claimed_count"]),
            provenance=str(entry.get("provenance", "")),
            exact_coords=entry.get("exact_coords"),
        )
        _validate(rec)
        records.append(rec)
    return records


def _frac_json(x: Fraction):
    # terminating decimals stay readable; anything else becomes "p/q"
    den = x.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    if den == 1:
        scaled = x
        digits = 0
        while scaled.denominator != 1:
            scaled *= 10
            digits += 1
        s = str(scaled.numerator)
        if digits == 0:
            return int(x)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        s = s.rjust(digits + 1, "0")
        return ("-" if neg else "") + s[:-digits] + "." + s[-digits:]
    return f"{x.numerator}/{x.denominator}"


def save_catalog(records: Sequence[ConstructionRecord], path):
    payload = []
    for rec in records:
        entry = {
            "id": rec.id,
            "n": rec.n,
            "claimed_count": rec.claimed_count,
            "provenance": rec.provenance,
            "coords": [[_frac_json(x), _frac_json(y)] for x, y in rec.coords],
            "edges": [list(e) for e in rec.edges],
        }
        if rec.exact_coords is not None:
            entry["exact_coords"] = rec.exact_coords
        payload.append(entry)
    text = json.dumps(payload, indent=1)
    # bare decimal strings become JSON numbers so reloading stays exact
    import re

    text = re.sub(r'"(-?\d+\.\d+)"', r"\1", text)
    with open(path, "w") as handle:
        handle.write(text + "\n")


def record_with_exact(rec: ConstructionRecord, result: RealizationResult) -> ConstructionRecord:
    """Copy of the record with exact coordinate expressions attached."""
    if result.status != EXACT_CERTIFIED or result.exact_points is None:
        raise CatalogError("exact coordinates are only attached to certified results")
    exact = [[to_expression(p.x), to_expression(p.y)] for p in result.exact_points]
    return ConstructionRecord(
        id=rec.id,
        n=rec.n,
        coords=rec.coords,
        edges=rec.edges,
        claimed_count=rec.claimed_count,
        provenance=rec.provenance,
        exact_coords=exact,
    )


def parse_exact_coords(rec: ConstructionRecord) -> list[Point]:
    if rec.exact_coords is None:
        raise CatalogError(f"record {rec.id}: no exact coordinates cached")
    return [Point(parse_expression(sx), parse_expression(sy)) for sx, sy in rec.exact_coords]


# ---------------------------------------------------------------------------
# approximate verification
# ---------------------------------------------------------------------------

def verify_approx(
    rec: ConstructionRecord,
    tol: Fraction = DEFAULT_TOLERANCE,
    ambiguity_band: Fraction = DEFAULT_BAND,
) -> ApproxReport:
    """Check every claimed edge against |dist - 1| <= tol over exact rationals.

    Reports ambiguous non-edges (within the band around distance 1) and never
    upgrades anything to a certificate.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise CatalogError("tolerance must be positive")
    lo = (1 - tol) ** 2
    hi = (1 + tol) ** 2
    failures = []
    worst = Fraction(0)
    for a, b in rec.edges:
        (x1, y1), (x2, y2) = rec.coords[a], rec.coords[b]
        d2 = (x1 - x2) ** 2 + (y1 - y2) ** 2
        worst = max(worst, abs(d2 - 1))
        if not (lo <= d2 <= hi):
            failures.append(((a, b), d2))
    band = Fraction(ambiguity_band)
    blo, bhi = (1 - band) ** 2, (1 + band) ** 2
    claimed = set(rec.edges)
    ambiguous = []
    for a in range(rec.n):
        for b in range(a + 1, rec.n):
            if (a, b) in claimed:
                continue
            (x1, y1), (x2, y2) = rec.coords[a], rec.coords[b]
            d2 = (x1 - x2) ** 2 + (y1 - y2) ** 2
            if blo <= d2 <= bhi:
                ambiguous.append((a, b))
    return ApproxReport(
        record_id=rec.id,
        tolerance=tol,
        ok=not failures,
        checked_edges=len(rec.edges),
        worst_sq_error=worst,
        failures=failures,
        ambiguous=ambiguous,
    )


# ---------------------------------------------------------------------------
# exact realization
# ---------------------------------------------------------------------------

def _seed_edge(rec: ConstructionRecord) -> Optional[tuple[int, int]]:
    """Claimed edge at the approximate-leftmost vertex whose length is nearest 1."""
    if not rec.edges:
        return None
    leftmost = min(range(rec.n), key=lambda i: (rec.coords[i][0], rec.coords[i][1]))
    incident = [e for e in rec.edges if leftmost in e]
    if not incident:
        return None

    def badness(e):
        (x1, y1), (x2, y2) = rec.coords[e[0]], rec.coords[e[1]]
        d2 = (x1 - x2) ** 2 + (y1 - y2) ** 2
        return (abs(d2 - 1), e)

    a, b = min(incident, key=badness)
    return (a, b) if a == leftmost else (b, a)


def _pick_witness(witnesses, target, flags, vertex):
    """Witness nearer the refined target; escalating exactness on near-ties."""
    if len(witnesses) == 1:
        return witnesses[0]
    tx, ty = float(target[0]), float(target[1])
    scored = []
    for w in witnesses:
        wx, wy = float(w.x), float(w.y)
        scored.append(((wx - tx) ** 2 + (wy - ty) ** 2, w))
    d0, d1 = scored[0][0], scored[1][0]
    if abs(d0 - d1) > 1e-9:
        return scored[0][1] if d0 < d1 else scored[1][1]
    # exact comparison against the rationalised target
    fx, fy = Fraction(tx).limit_denominator(10**12), Fraction(ty).limit_denominator(10**12)
    dists = []
    for w in witnesses:
        dx = w.x - fx
        dy = w.y - fy
        dists.append(dx * dx + dy * dy)
    cmp = (dists[0] - dists[1]).sign()
    if cmp < 0:
        return witnesses[0]
    if cmp > 0:
        return witnesses[1]
    # genuinely equidistant: lexicographically smaller interval midpoint, flagged
    flags.append(vertex)
    key = lambda w: (float(w.x), float(w.y))
    return min(witnesses, key=key)


def realize_exact(rec: ConstructionRecord, dps: int = 60) -> RealizationResult:
    """Rebuild exact coordinates for a record and certify its claimed edges.

    Propagation places any vertex with two already-placed claimed neighbors
    at an exact circle-circle intersection.  When no such vertex exists, a
    stalled vertex with one placed neighbor is anchored through a second
    placed vertex whose squared distance is recognised as a tower element
    from the refined numerics; the subsequent exact re-check of every claimed
    edge (and re-derivation of the whole graph) is what certifies.
    """
    if rec.n == 1:
        pts = [Point.exact(0, 0)]
        return RealizationResult(
            record_id=rec.id,
            status=EXACT_CERTIFIED,
            exact_points=pts,
            placement_order=[0],
            derived_count=0,
        )
    seed = _seed_edge(rec)
    if seed is None:
        return RealizationResult(
            record_id=rec.id,
            status=APPROXIMATE_ONLY,
            flexible=list(range(rec.n)),
            note="no seed edge incident to the leftmost vertex",
        )
    frame = RefinedFrame(
        rec.coords, rec.edges, seed, dps=dps,
        symmetry=detect_mirror_involution(rec.coords),
    )
    adjacency = {i: set() for i in range(rec.n)}
    for a, b in rec.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)

    a_idx, b_idx = seed
    placed: dict[int, Point] = {
        a_idx: Point.exact(0, 0),
        b_idx: Point.exact(1, 0),
    }
    order = [a_idx, b_idx]
    flags: list[int] = []
    hinges = 0

    def place_from_two(v: int) -> bool:
        anchors = sorted(adjacency[v] & placed.keys())
        for i in range(len(anchors)):
            for j in range(i + 1, len(anchors)):
                p, q = placed[anchors[i]], placed[anchors[j]]
                witnesses = two_circle_points(p, 1, q, 1)
                if not witnesses:
                    continue
                placed[v] = _pick_witness(witnesses, frame.position_float(v), flags, v)
                order.append(v)
                return True
        return False

    def place_by_hinge(v: int) -> bool:
        nonlocal hinges
        neighbor = sorted(adjacency[v] & placed.keys())
        if not neighbor:
            return False
        p_idx = neighbor[0]
        candidates = []
        with mp.workdps(dps):
            vx, vy = frame.position(v)
            for q_idx in sorted(placed):
                if q_idx == p_idx:
                    continue
                qx, qy = frame.position(q_idx)
                d2 = (vx - qx) ** 2 + (vy - qy) ** 2
                if float(d2) < 0.01:
                    continue
                candidates.append((float(d2), q_idx, d2))
        candidates.sort(key=lambda t: (t[0], t[1]))
        for _, q_idx, d2 in candidates:
            q = placed[q_idx]
            tower = sq_dist(placed[p_idx], q).tower
            exact_d2 = recognize_square_distance(d2, tower, dps=dps)
            if exact_d2 is None:
                continue
            witnesses = two_circle_points(placed[p_idx], 1, q, exact_d2)
            if not witnesses:
                continue
            placed[v] = _pick_witness(witnesses, frame.position_float(v), flags, v)
            order.append(v)
            hinges += 1
            return True
        return False

    while len(placed) < rec.n:
        progressed = False
        for v in range(rec.n):
            if v not in placed and len(adjacency[v] & placed.keys()) >= 2:
                if place_from_two(v):
                    progressed = True
                    break
        if progressed:
            continue
        stalled = [
            v for v in range(rec.n)
            if v not in placed and len(adjacency[v] & placed.keys()) >= 1
        ]
        broke = False
        for v in stalled:
            if place_by_hinge(v):
                broke = True
                break
        if not broke:
            break

    if len(placed) < rec.n:
        return RealizationResult(
            record_id=rec.id,
            status=APPROXIMATE_ONLY,
            placement_order=order,
            flexible=sorted(set(range(rec.n)) - placed.keys()),
            hinge_placements=hinges,
            tie_break_flags=flags,
            note="propagation stalled; remaining vertices are flexible under it",
        )

    points = [placed[v] for v in range(rec.n)]
    for a, b in rec.edges:
        if compare_sq_dist(points[a], points[b], Fraction(1)) != 0:
            return RealizationResult(
                record_id=rec.id,
                status=FAILED,
                exact_points=points,
                placement_order=order,
                failed_edge=(a, b),
                hinge_placements=hinges,
                tie_break_flags=flags,
                note="claimed edge is not a unit distance in the exact realization",
            )
    try:
        graph = unit_distance_graph(points)
    except DuplicatePointError as exc:
        return RealizationResult(
            record_id=rec.id,
            status=FAILED,
            exact_points=points,
            placement_order=order,
            hinge_placements=hinges,
            note=f"exact points collapse: {exc}",
        )
    derived = set(graph.edges)
    claimed = set(rec.edges)
    bonus = sorted(derived - claimed)
    depth = max((p.x.tower.depth for p in points), default=0)
    return RealizationResult(
        record_id=rec.id,
        status=EXACT_CERTIFIED,
        exact_points=points,
        placement_order=order,
        derived_count=graph.m,
        bonus_edges=bonus,
        hinge_placements=hinges,
        tower_depth=depth,
        tie_break_flags=flags,
    )


# ---------------------------------------------------------------------------
# summary
# ---------------------------------------------------------------------------

@dataclass
class SummaryRow:
    n: int
    lower_bound: int
    witness_id: str
    status: str


def catalog_summary(records=None, results: Optional[dict] = None) -> list[SummaryRow]:
    """Best claimed lower bound per n, with certification status when known."""
    records = load_catalog() if records is None else records
    by_n: dict[int, list[ConstructionRecord]] = {}
    for rec in records:
        by_n.setdefault(rec.n, []).append(rec)
    rows = []
    for n in sorted(by_n):
        best = max(by_n[n], key=lambda r: r.claimed_count)
        status = "unverified"
        if results:
            statuses = [results[r.id].status for r in by_n[n] if r.id in results]
            best_statuses = [
                results[r.id].status
                for r in by_n[n]
                if r.id in results and r.claimed_count == best.claimed_count
            ]
            if EXACT_CERTIFIED in best_statuses:
                status = EXACT_CERTIFIED
            elif best_statuses:
                status = best_statuses[0]
            elif statuses:
                status = statuses[0]
        rows.append(
            SummaryRow(n=n, lower_bound=best.claimed_count, witness_id=best.id, status=status)
        )
    return rows
