"""Formula evaluators, the upper-bound pipeline, and crossover thresholds."""

from fractions import Fraction

import pytest

from unitdist.bounds import (
    BoundsError,
    build_upper_table,
    cr_ackerman,
    cr_ackerman_value,
    cr_harmonic_simple,
    cr_multi2_even,
    cr_multi2_large,
    cr_multi_convex,
    cr_multi_general,
    cr_nonhomotopic_improved,
    cr_nonhomotopic_ptt,
    cr_planar_excess,
    crossover_case2,
    crossover_case3,
    crossover_theorem_vs_table,
    evaluate_formula,
    icbrt,
    jensen_vs_previous,
    u_upper_degree2,
    u_upper_jensen,
    u_upper_proposition,
    u_upper_recursion,
    u_upper_theorem,
    validate_theorem1_cases,
)
from unitdist.geometry import jensen_degree_floor


class TestPlanarExcess:
    def test_triangle(self):
        assert cr_planar_excess(3, 3) == 0

    def test_k5(self):
        assert cr_planar_excess(5, 10) == 1  # matches cr(K5) = 1

    def test_k33_edge_count(self):
        assert cr_planar_excess(6, 9) == 0


class TestAckerman:
    def test_at_gate(self):
        ev = cr_ackerman(100, 695)
        assert ev.value == Fraction(695**3, 290000)

    def test_zero_edges(self):
        assert cr_ackerman(10, 0).value == 0

    def test_below_gate(self):
        ev = cr_ackerman(100, 694)
        expected = max(Fraction(0), Fraction(694**3, 290000) - Fraction(3500, 29))
        assert ev.value == expected
        assert ev.extras["branch"] == "general"


class TestMultiConvex:
    def test_k1_identity(self):
        for n, m in [(10, 40), (7, 23), (50, 400)]:
            ev = cr_multi_convex(n, m, 1, cr_ackerman_value)
            assert ev.value == cr_ackerman_value(n, m)

    def test_planar_base_small(self):
        base = lambda n, m: cr_planar_excess(n, m)
        assert cr_multi_convex(3, 4, 2, base).value == 0

    def test_exact_convex_combination(self):
        ev = cr_multi_convex(10, 139, 2, cr_ackerman_value)
        expected = 4 * (
            Fraction(1, 2) * cr_ackerman_value(10, 69)
            + Fraction(1, 2) * cr_ackerman_value(10, 70)
        )
        assert ev.value == expected

    def test_divisible_m_matches_scaled_base(self):
        for n, m, k in [(12, 120, 2), (9, 99, 3), (20, 400, 5)]:
            ev = cr_multi_convex(n, m, k, cr_ackerman_value)
            assert ev.value == k * k * cr_ackerman_value(n, m // k)


class TestMulti2Even:
    def test_clamped_small(self):
        assert cr_multi2_even(3, 0).value == 0
        assert cr_multi2_even(15, 74).value == 0  # 148 - 180 + 24 = -8

    def test_table_value(self):
        assert cr_multi2_even(22, 144).value == 48

    def test_odd_rejected(self):
        ev = cr_multi2_even(22, 143)
        assert not ev.applicable and "odd" in ev.reason


class TestMultiGeneral:
    def test_gate_boundary(self):
        assert cr_multi_general(20, 139, 1).applicable

    def test_gate_floor_fails(self):
        ev = cr_multi_general(20, 277, 2)  # floor(138.5) = 138 < 139
        assert not ev.applicable

    def test_simple_form(self):
        ev = cr_multi_general(10, 1400, 2)
        assert ev.extras["simple"] == Fraction(1400**3, 58 * 100)
        assert ev.value == ev.extras["simple"]  # k | m


class TestMulti2Large:
    def test_odd(self):
        assert not cr_multi2_large(10, 139).applicable

    def test_value(self):
        assert cr_multi2_large(10, 140).value == Fraction(140**3, 5800)

    def test_gate(self):
        assert not cr_multi2_large(100, 1388).applicable


class TestNonHomotopic:
    def test_ptt(self):
        assert cr_nonhomotopic_ptt(10, 41).value == Fraction(1681, 240)
        assert not cr_nonhomotopic_ptt(10, 40).applicable
        assert cr_nonhomotopic_ptt(2, 9).value == Fraction(81, 48)

    def test_improved(self):
        assert cr_nonhomotopic_improved(2, 6).value == 3
        assert cr_nonhomotopic_improved(5, 0).value == 0

    def test_improved_beats_ptt_eventually(self):
        n, m = 10, 200
        assert cr_nonhomotopic_improved(n, m).value > cr_nonhomotopic_ptt(n, m).value


class TestHarmonicSimple:
    def test_triangle(self):
        assert cr_harmonic_simple(3, 3).value == 0

    def test_value(self):
        assert cr_harmonic_simple(10, 48).value == 24

    def test_k4(self):
        assert cr_harmonic_simple(4, 6).value == 0


class TestUpperBounds:
    def test_theorem_small(self):
        assert u_upper_theorem(15) == 71
        assert 4 * 71**3 <= 29 * 15**4 < 4 * 72**3
        assert u_upper_theorem(1) == 0  # clamped to C(1,2)

    def test_theorem_integer_oracle_grid(self):
        for n in [1, 2, 3, 10, 47, 380, 521, 1000, 10**4, 10**5, 10**6]:
            u = u_upper_theorem(n)
            cap = n * (n - 1) // 2
            assert u <= cap
            if u < cap:
                assert 4 * u**3 <= 29 * n**4 < 4 * (u + 1) ** 3

    def test_jensen_thresholds(self):
        assert u_upper_jensen(380) == 5326
        assert u_upper_theorem(380) == 5327
        assert u_upper_jensen(381) == 5347
        assert u_upper_theorem(381) == 5345
        assert u_upper_jensen(1) == 0

    def test_proposition_values(self):
        assert u_upper_proposition(22) == 72
        assert u_upper_proposition(29) == 108
        assert u_upper_proposition(30) == 113

    def test_proposition_monotone_lhs(self):
        for n in (15, 22, 30):
            lhs = [4 * m - 12 * n + 24 + jensen_degree_floor(n, m) for m in range(0, 200)]
            assert all(a <= b for a, b in zip(lhs, lhs[1:]))

    def test_proposition_rejects_73_edges_on_22_vertices(self):
        # the step that caps the n=22 row at 72: balanced degrees at m=73
        # already violate the inequality, 466 > 462
        n, m = 22, 73
        lhs = 4 * m - 12 * n + 24 + jensen_degree_floor(n, m)
        assert lhs == 466
        assert n * n - n == 462
        assert lhs > n * n - n

    def test_recursion(self):
        assert u_upper_recursion(15, 33) == 38
        assert u_upper_recursion(3, 1) == 3
        assert u_upper_recursion(17, 42) == 47

    def test_degree2(self):
        assert u_upper_degree2(33) == 35
        assert u_upper_degree2(37) == 39
        assert u_upper_degree2(102) == 104

    def test_upper_bounds_nondecreasing(self):
        for fn in (u_upper_theorem, u_upper_jensen):
            values = [fn(n) for n in range(1, 1001)]
            assert all(a <= b for a, b in zip(values, values[1:]))
        values = [u_upper_proposition(n) for n in range(3, 1001)]
        assert all(a <= b for a, b in zip(values, values[1:]))


class TestPipeline:
    def test_bold_column(self):
        rows = build_upper_table({21: 68}, 30)
        got = [row.combined for row in rows if row.n >= 22]
        assert got == [72, 77, 82, 87, 92, 97, 102, 108, 113]

    def test_u15_prelude(self):
        rows = build_upper_table({14: 33}, 15)
        row = rows[-1]
        assert row.combined == 38
        assert row.recursion_value == 38
        assert row.degree2_value == 35

    def test_tiny_seed(self):
        rows = build_upper_table({2: 1}, 3)
        assert rows[-1].combined == 3

    def test_seed_gap_error(self):
        with pytest.raises(BoundsError, match="seed"):
            build_upper_table({}, 10)

    def test_row_invariant(self):
        for row in build_upper_table({21: 68}, 60):
            if row.source == "pipeline":
                assert row.combined == min(
                    row.recursion_value, max(row.degree2_value, row.proposition_value)
                )


class TestCrossovers:
    def test_case2(self):
        assert crossover_case2() == 47
        # direct rational checks either side
        assert 4 * Fraction(139 * 46, 20) ** 3 >= 29 * 46**4
        assert 4 * Fraction(139 * 47, 20) ** 3 < 29 * 47**4

    def test_case3(self):
        assert crossover_case3() == 380

    def test_theorem_vs_table(self):
        rep = crossover_theorem_vs_table()
        assert abs(rep.value - 521) <= 5
        assert rep.chain_before < rep.theorem_before
        assert rep.theorem_at <= rep.chain_at

    def test_weaker_seed_moves_crossover_earlier(self):
        weak = {n: v + 40 for n, v in [(21, 68)]}
        rep = crossover_theorem_vs_table({**{21: 108}}, n_cap=800)
        assert rep.value <= crossover_theorem_vs_table().value


class TestCaseValidation:
    def test_validation(self):
        report = validate_theorem1_cases(gap_check_to=2000)
        assert report.coverage_ok
        assert report.overlap == (47, 380)
        assert report.gap_ok and report.first_gap_failure is None
        assert report.tail_certificate


class TestComparisonReport:
    def test_rows_present(self):
        rows = jensen_vs_previous(30)
        by_n = {r.n: r for r in rows}
        assert by_n[25].jensen < by_n[25].published_chain
        assert by_n[25].jensen < by_n[25].recursion_chain


class TestRegistry:
    def test_known_ids(self):
        assert evaluate_formula("theorem1", 15).value == 71
        assert evaluate_formula("multi2_even", 22, m=144).value == 48
        assert not evaluate_formula("multi2_even", 22, m=143).applicable

    def test_unknown_id(self):
        with pytest.raises(BoundsError, match="unknown formula"):
            evaluate_formula("nope", 5)


def test_icbrt():
    assert icbrt(0) == 0
    assert icbrt(26) == 2
    assert icbrt(27) == 3
    big = 29 * 10**24
    r = icbrt(big)
    assert r**3 <= big < (r + 1) ** 3
