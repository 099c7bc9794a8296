"""Certificates and enumeration for the 15-point case analysis."""

from fractions import Fraction
from itertools import combinations

import pytest

from unitdist.case15 import (
    C6,
    P3P3,
    P4P2,
    P5P1,
    ROTATION_SAMPLES,
    CaseAnalysisError,
    certify_case,
    certify_case_c6,
    certify_case_p3p3,
    certify_case_p4p2,
    certify_case_p5p1,
    derive_degree_profile,
    enumerate_gn_types,
    hexagon_point,
    recheck_certificate,
    verify_observation_chain,
)
from unitdist.geometry import sq_dist


# -- independent oracle for the neighborhood graph shapes ---------------------

def _oracle_components(n, edges):
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), []
    for v in range(n):
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            u = stack.pop()
            if u not in comp:
                comp.add(u)
                stack.extend(adj[u] - comp)
        seen |= comp
        inner = sum(1 for a, b in edges if a in comp)
        comps.append((len(comp), inner))
    return comps


def oracle_gn_types():
    """All graphs on 6 labeled vertices, 4..6 edges, max degree <= 2, whose
    components embed as chains of 60-degree steps on a circle: paths on at
    most five vertices always fit; a path through all six slots wraps shut,
    so only the full 6-cycle survives among cycles."""
    all_edges = list(combinations(range(6), 2))
    shapes = set()
    for size in (4, 5, 6):
        for subset in combinations(all_edges, size):
            degs = [0] * 6
            for a, b in subset:
                degs[a] += 1
                degs[b] += 1
            if max(degs) > 2:
                continue
            comps = _oracle_components(6, subset)
            ok = True
            for nverts, inner in comps:
                is_cycle = inner == nverts and nverts > 1
                is_path = inner == nverts - 1
                if is_cycle and nverts != 6:
                    ok = False
                elif is_path and nverts == 6:
                    ok = False  # six-slot chain closes into the hexagon
                elif not (is_cycle or is_path):
                    ok = False
            if not ok:
                continue
            label = "+".join(
                f"{'C' if inner == nv else 'P'}{nv}"
                for nv, inner in sorted(comps, key=lambda t: (-t[0], t[1]))
            )
            shapes.add(label)
    return shapes


class TestEnumeration:
    def test_exactly_four_types(self):
        enum = enumerate_gn_types()
        assert enum.types == {C6, P5P1, P4P2, P3P3}

    def test_matches_brute_force_oracle(self):
        assert oracle_gn_types() == {"C6", "P5+P1", "P4+P2", "P3+P3"}

    def test_five_edge_case_empty(self):
        enum = enumerate_gn_types()
        assert not enum.five_edges_possible
        assert enum.six_chain_closes
        # direct check: the sixth chain step returns to the start
        assert sq_dist(hexagon_point(5), hexagon_point(0)) == 1

    def test_witness_edges_exact(self):
        enum = enumerate_gn_types()
        for label, witness in enum.witnesses.items():
            degs = {}
            for a, b in witness.edges:
                degs[a] = degs.get(a, 0) + 1
                degs[b] = degs.get(b, 0) + 1
            assert max(degs.values()) <= 2
            for a, b in witness.edges:
                assert sq_dist(witness.points[a], witness.points[b]) == 1

    def test_all_rotation_samples(self):
        for rot in ROTATION_SAMPLES:
            enum = enumerate_gn_types(rot)
            assert enum.types == {C6, P5P1, P4P2, P3P3}


class TestDegreeProfile:
    def test_forced_profile(self):
        profile = derive_degree_profile(33, 38)
        assert profile.unique
        assert profile.profiles == [{5: 14, 6: 1}]
        assert not profile.needs_deletion_argument

    def test_39_rejected(self):
        with pytest.raises(CaseAnalysisError, match="cap"):
            derive_degree_profile(33, 39)

    def test_min_degree_relaxed(self):
        profile = derive_degree_profile(33, 38, min_degree=4)
        assert len(profile.profiles) > 1
        assert profile.needs_deletion_argument
        assert {5: 14, 6: 1} in profile.profiles


class TestCertificates:
    @pytest.mark.parametrize("builder,label", [
        (certify_case_c6, C6),
        (certify_case_p5p1, P5P1),
        (certify_case_p4p2, P4P2),
        (certify_case_p3p3, P3P3),
    ])
    def test_all_facts_hold(self, builder, label):
        cert = builder()
        assert cert.case == label
        assert cert.verdict == "contradiction_certified"
        assert cert.failed_facts() == []

    def test_certificates_recheck_from_coordinates(self):
        for builder in (certify_case_c6, certify_case_p5p1,
                        certify_case_p4p2, certify_case_p3p3):
            assert recheck_certificate(builder())

    def test_c6_distances(self):
        cert = certify_case_c6()
        pts = cert.points
        assert sq_dist(pts["r"], pts["v3"]) == 4
        assert sq_dist(pts["r"], pts["v6"]) == 4
        assert sq_dist(pts["r"], pts["v4"]) > 4
        assert sq_dist(pts["r"], pts["v5"]) > 4
        assert sq_dist(pts["r"], pts["v4"]) == 7

    def test_c6_counting_record(self):
        cert = certify_case_c6()
        count_fact = [f for f in cert.facts if f.kind == "integer"][0]
        assert count_fact.expected == "12"

    def test_p3p3_rhombus_and_cycle(self):
        cert = certify_case_p3p3()
        pts = cert.points
        for a, b in (("w11", "w13"), ("w13", "w33"), ("w33", "w31"), ("w31", "w11")):
            assert sq_dist(pts[a], pts[b]) == 3
        d1 = sq_dist(pts["w11"], pts["w33"])
        d2 = sq_dist(pts["w13"], pts["w31"])
        assert d1 + d2 == 12
        cycle = ["w11", "w12", "w13", "w23", "w33", "w32", "w31", "w21"]
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            assert sq_dist(pts[a], pts[b]) == 1

    def test_case_selector(self):
        for label in (C6, P5P1, P4P2, P3P3):
            assert certify_case(label).verdict == "contradiction_certified"
        with pytest.raises(CaseAnalysisError):
            certify_case("C7")

    def test_other_rotations_certify(self):
        for rot in ROTATION_SAMPLES[1:]:
            for builder in (certify_case_p5p1, certify_case_p4p2, certify_case_p3p3):
                assert builder(rot).verdict == "contradiction_certified"


class TestObservationChain:
    def test_integers(self):
        report = verify_observation_chain()
        assert report.r_to_n_cap_per_vertex == 2
        assert report.r_to_n_cap_total == 16
        assert report.min_edges_inside_n == 4
        assert report.edges_n_to_r_by_size == {4: 16, 5: 14, 6: 12}
        assert report.forced_two_neighbors_at_four
        assert report.degree_sum == 76
        assert report.consistent
