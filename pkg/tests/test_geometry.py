"""Unit-distance graph derivation, circle intersections, forbidden subgraphs."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from unitdist.fields import rational, sqrt_extend
from unitdist.geometry import (
    DuplicatePointError,
    GeometryError,
    Point,
    common_unit_neighbors,
    contains_k23,
    contains_k4,
    jensen_degree_floor,
    sq_dist,
    unit_distance_graph,
)


def r3():
    return sqrt_extend(rational(3))[1]


def triangle_points():
    half = Fraction(1, 2)
    return [
        Point.exact(0, 0),
        Point.exact(1, 0),
        Point.exact(rational(half), r3() * half),
    ]


class TestExactGraph:
    def test_equilateral_triangle(self):
        g = unit_distance_graph(triangle_points())
        assert g.m == 3
        assert g.edges == [(0, 1), (0, 2), (1, 2)]
        assert g.degree_stats().degrees == (2, 2, 2)

    def test_distance_two_no_edge(self):
        g = unit_distance_graph([Point.exact(0, 0), Point.exact(2, 0)])
        assert g.m == 0

    def test_duplicate_points_rejected(self):
        with pytest.raises(DuplicatePointError):
            unit_distance_graph([Point.exact(0, 0), Point.exact(0, 0)])

    def test_order_independence(self):
        pts = triangle_points() + [Point.exact(rational(Fraction(3, 2)), r3() * Fraction(1, 2))]
        g = unit_distance_graph(pts)
        perm = [2, 0, 3, 1]
        permuted = [pts[i] for i in perm]
        g2 = unit_distance_graph(permuted)
        relabel = {old: new for new, old in enumerate(perm)}
        expected = sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in g.edges)
        assert g2.edges == expected


class TestApproximateGraph:
    def test_tolerance_edge(self):
        pts = [Point.approximate(0, 0), Point.approximate(Fraction(99, 100), 0)]
        g = unit_distance_graph(pts, mode="approximate", tol=Fraction(2, 100))
        assert g.m == 1
        assert g.certificates[(0, 1)] == ("approximate", Fraction(1, 50))

    def test_ambiguous_pair_reported(self):
        pts = [Point.approximate(0, 0), Point.approximate(Fraction(1003, 1000), 0)]
        g = unit_distance_graph(
            pts, mode="approximate", tol=Fraction(1, 1000), ambiguity_band=Fraction(1, 200)
        )
        assert g.m == 0
        assert g.ambiguous == [(0, 1)]

    def test_separation_guard(self):
        pts = [Point.approximate(0, 0), Point.approximate(Fraction(1, 100), 0)]
        with pytest.raises(DuplicatePointError):
            unit_distance_graph(pts, mode="approximate", tol=Fraction(1, 50))

    def test_requires_tolerance(self):
        with pytest.raises(GeometryError):
            unit_distance_graph([Point.approximate(0, 0)], mode="approximate")


class TestCommonUnitNeighbors:
    def test_sqrt3_apart_two_witnesses(self):
        p = Point.exact(0, 0)
        q = Point.exact(rational(0), r3())
        count, witnesses = common_unit_neighbors(p, q)
        assert count == 2
        for w in witnesses:
            assert sq_dist(w, p) == 1
            assert sq_dist(w, q) == 1

    def test_tangency_single_midpoint(self):
        p = Point.exact(0, 0)
        q = Point.exact(2, 0)
        count, witnesses = common_unit_neighbors(p, q)
        assert count == 1
        assert witnesses[0].x == 1 and witnesses[0].y == 0

    def test_disjoint_circles(self):
        count, witnesses = common_unit_neighbors(
            Point.exact(0, 0), Point.exact(Fraction(5, 2), 0)
        )
        assert count == 0

    def test_coincident_points_error(self):
        with pytest.raises(GeometryError):
            common_unit_neighbors(Point.exact(0, 0), Point.exact(0, 0))

    def test_witness_count_matches_distance_class(self):
        rng = random.Random(7)
        p = Point.exact(0, 0)
        for _ in range(25):
            num = rng.randint(1, 40)
            q = Point.exact(Fraction(num, 10), 0)
            count, _ = common_unit_neighbors(p, q)
            if num < 20:
                assert count == 2
            elif num == 20:
                assert count == 1
            else:
                assert count == 0


class TestForbiddenSubgraphs:
    def test_abstract_k23(self):
        edges = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
        found, witness = contains_k23(5, edges)
        assert found
        u, w, common = witness
        assert {u, w} == {0, 1} and set(common) == {2, 3, 4}

    def test_empty_graph_no_k23(self):
        assert contains_k23(4, []) == (False, None)

    def test_unit_rhombus_no_k4(self):
        half = Fraction(1, 2)
        pts = [
            Point.exact(0, 0),
            Point.exact(1, 0),
            Point.exact(rational(half), r3() * half),
            Point.exact(rational(-half), r3() * half),
        ]
        g = unit_distance_graph(pts)
        assert g.m == 5  # two triangles sharing an edge
        assert g.contains_k4() == (False, None)

    def test_abstract_k4(self):
        edges = list(combinations(range(4), 2))
        found, witness = contains_k4(4, edges)
        assert found and witness == (0, 1, 2, 3)

    def test_exact_graphs_never_k23(self):
        # three unit circles can pairwise meet, but no two points may
        # have three common unit neighbors
        pts = triangle_points() + [
            Point.exact(rational(Fraction(3, 2)), r3() * Fraction(1, 2)),
            Point.exact(2, 0),
            Point.exact(rational(Fraction(-1, 2)), r3() * Fraction(1, 2)),
        ]
        g = unit_distance_graph(pts)
        assert g.contains_k23() == (False, None)


class TestJensenFloor:
    def test_balanced_example(self):
        # 2m = 144 over 22 vertices: 12 of degree 7, 10 of degree 6
        assert 12 * 21 + 10 * 15 == 402
        assert jensen_degree_floor(22, 72) == 402

    def test_small_case(self):
        assert jensen_degree_floor(4, 2) == 0

    def test_29_vertices(self):
        # 2m = 216 over 29: 13 of degree 8, 16 of degree 7
        assert 13 * 28 + 16 * 21 == 700
        assert jensen_degree_floor(29, 108) == 700

    def test_lower_bounds_all_sequences(self):
        rng = random.Random(42)
        choose2 = lambda k: k * (k - 1) // 2
        for _ in range(200):
            n = rng.randint(1, 12)
            m = rng.randint(0, 3 * n)
            # random integer degree sequence with sum 2m
            degs = [0] * n
            for _ in range(2 * m):
                degs[rng.randrange(n)] += 1
            assert jensen_degree_floor(n, m) <= sum(choose2(d) for d in degs)
