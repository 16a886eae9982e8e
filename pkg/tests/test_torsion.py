"""Torsion points, stabilizers, minus-one scans, and propagation."""

from fractions import Fraction

import pytest

from weylorb.intlinalg import freeze, identity, mat_mul
from weylorb.rootdata import build_root_datum, embed_diagram, enumerate_group
from weylorb.torsion import (
    TorsionPoint,
    find_minus_one_points,
    point_from_ambient,
    propagate,
    stabilizer,
    two_torsion_points,
)


def minus_identity(rank):
    return freeze([[-1 if i == j else 0 for j in range(rank)] for i in range(rank)])


class TestTorsionPoint:
    def test_reduction(self):
        p = TorsionPoint(4, ((2, 0, 2, 0),))
        assert p.reduced() == TorsionPoint(2, ((1, 0, 1, 0),))

    def test_from_fractions_roundtrip(self):
        rows = [[Fraction(1, 2), Fraction(0), Fraction(1, 3), Fraction(0)]]
        p = TorsionPoint.from_fractions(rows)
        assert p.den == 6
        assert p.as_fractions() == [
            [Fraction(1, 2), Fraction(0), Fraction(1, 3), Fraction(0)]
        ]

    def test_group_law(self):
        half = TorsionPoint.from_fractions([[Fraction(1, 2), 0, 0, 0]])
        assert half.add(half).is_zero()
        third = TorsionPoint.from_fractions([[Fraction(1, 3), 0, 0, 0]])
        assert half.add(third).den == 6

    def test_apply_linearity(self):
        p = TorsionPoint.from_fractions(
            [[Fraction(1, 2), 0, 0, 0], [0, Fraction(1, 2), 0, 0]]
        )
        swap = ((0, 1), (1, 0))
        q = p.apply(swap)
        assert q.coords[0] == p.coords[1] and q.coords[1] == p.coords[0]
        assert p.apply(identity(2)) == p

    def test_json_roundtrip(self):
        p = TorsionPoint.from_fractions(
            [[Fraction(1, 2), Fraction(1, 4), 0, 0], [0, 0, Fraction(3, 4), 0]]
        )
        assert TorsionPoint.from_json(p.to_json()) == p

    def test_validation(self):
        with pytest.raises(ValueError):
            TorsionPoint(0, ())
        with pytest.raises(ValueError):
            TorsionPoint(2, ((3, 0, 0, 0),))

    def test_two_torsion_count(self):
        pts = list(two_torsion_points(2))
        assert len(pts) == 256


class TestStabilizer:
    def test_zero_point_has_full_group(self):
        datum = build_root_datum("G", 2)
        report = stabilizer(datum, TorsionPoint.zero(2))
        assert report.order == 12
        assert report.orbit_size == 1
        assert report.action_classification == "other"

    def test_orbit_stabilizer_product(self):
        datum = build_root_datum("B", 3)
        group = enumerate_group(datum)
        for p in [
            TorsionPoint.from_fractions(
                [[Fraction(1, 2), 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
            ),
            TorsionPoint.from_fractions(
                [[Fraction(1, 3), 0, 0, 0], [0, Fraction(1, 3), 0, 0], [0, 0, 0, 0]]
            ),
        ]:
            report = stabilizer(group, p)
            assert report.order * report.orbit_size == group.order
            for g in report.elements:
                assert p.apply(g) == p

    def test_conjugate_points_conjugate_stabilizers(self):
        datum = build_root_datum("G", 2)
        group = enumerate_group(datum)
        p = find_minus_one_points(group)[0]
        s = group.generators[0]
        q = p.apply(s)
        rp = stabilizer(group, p)
        rq = stabilizer(group, q)
        assert rp.order == rq.order
        from weylorb.torsion import _matrix_inverse

        conj = {
            freeze(mat_mul(s, mat_mul(g, _matrix_inverse(s))))
            for g in rp.elements
        }
        assert conj == set(rq.elements)

    def test_report_serialization(self):
        datum = build_root_datum("G", 2)
        p = find_minus_one_points(datum)[0]
        d = stabilizer(datum, p).to_dict()
        assert d["order"] == 2
        assert d["classification"] == "minus_one_local_model"
        assert d["local_model"] == "C^4/+-1"
        assert d["crepant"] == "no_crepant_resolution"


class TestMinusOneScan:
    @pytest.mark.parametrize(
        "letter,rank,label",
        [("G", 2, "C^4/+-1"), ("B", 3, "C^6/+-1"), ("D", 4, "C^8/+-1")],
    )
    def test_scans_find_points(self, letter, rank, label):
        datum = build_root_datum(letter, rank)
        points = find_minus_one_points(datum, denominator_bound=4)
        assert points
        report = stabilizer(datum, points[0])
        assert report.order == 2
        assert report.action_classification == "minus_one_local_model"
        assert report.local_model_label == label
        assert minus_identity(rank) in report.elements

    def test_representatives_lie_in_distinct_orbits(self):
        datum = build_root_datum("G", 2)
        group = enumerate_group(datum)
        points = find_minus_one_points(group)
        seen = set()
        for p in points:
            orbit = frozenset(p.apply(g) for g in group)
            assert orbit not in seen
            seen.add(orbit)

    def test_counts_frozen(self):
        # orbit counts frozen from the exhaustive 2-torsion enumeration
        assert len(find_minus_one_points(build_root_datum("G", 2))) == 35
        assert len(find_minus_one_points(build_root_datum("B", 3))) == 140

    def test_scan_agrees_with_per_point_enumeration_rank2(self):
        # independent route: test all 2-torsion points directly
        datum = build_root_datum("G", 2)
        group = enumerate_group(datum)
        minus = minus_identity(2)
        brute_orbits = set()
        for p in two_torsion_points(2):
            if p.is_zero():
                continue
            stab = [g for g in group if p.apply(g) == p]
            if len(stab) == 2 and minus in stab:
                brute_orbits.add(frozenset(p.apply(g) for g in group))
        fast = find_minus_one_points(group)
        fast_orbits = {frozenset(p.apply(g) for g in group) for p in fast}
        assert fast_orbits == brute_orbits

    def test_a_series_has_none(self):
        # -1 is not in the Weyl group of A_2, so no orbit qualifies
        assert find_minus_one_points(build_root_datum("A", 2)) == []

    def test_denominator_bound_validation(self):
        with pytest.raises(ValueError):
            find_minus_one_points(build_root_datum("G", 2), denominator_bound=1)


class TestPointFromAmbient:
    def test_g2_roundtrip(self):
        datum = build_root_datum("G", 2)
        # ambient coordinates of a coroot-basis point must convert back
        p = find_minus_one_points(datum)[0]
        fracs = p.as_fractions()
        coroots = [list(c) for c in datum.simple_coroots]
        m = len(coroots[0])
        ambient = [
            [
                sum(Fraction(coroots[j][i]) * fracs[j][t] for j in range(2))
                for t in range(4)
            ]
            for i in range(m)
        ]
        q = point_from_ambient(datum, ambient)
        assert q is not None
        # q equals p modulo the kernel of the coroot inclusion; here they agree
        diff = q.add(TorsionPoint(p.den, tuple(
            tuple((-x) % p.den for x in row) for row in p.coords
        )))
        coroot_cols = [
            [coroots[j][i] for j in range(2)] for i in range(m)
        ]
        for t in range(4):
            for i in range(m):
                val = sum(
                    Fraction(coroot_cols[i][j]) * diff.as_fractions()[j][t]
                    for j in range(2)
                )
                assert val % 1 == 0

    def test_unreachable_point_returns_none(self):
        datum = build_root_datum("A", 1)  # coroot (1, -1) in Z^2
        # (1/2, 0) is not congruent to any multiple of (1, -1) modulo 1...
        # actually y*(1,-1) = (y,-y); first coord 1/2 forces y = 1/2 which
        # gives second coord 1/2 = -1/2 mod 1: consistent.  Use denominators
        # that genuinely clash instead.
        ambient = [
            [Fraction(1, 2), 0, 0, 0],
            [Fraction(1, 3), 0, 0, 0],
        ]
        assert point_from_ambient(datum, ambient) is None


class TestPropagation:
    @pytest.mark.parametrize(
        "sub,ambient,nodes,extra",
        [
            (("B", 3), ("F", 4), [1, 2, 3], 1),
            (("D", 4), ("D", 5), [2, 3, 4, 5], 1),
        ],
    )
    def test_stabilizer_preserved(self, sub, ambient, nodes, extra):
        sub_datum = build_root_datum(*sub)
        amb_datum = build_root_datum(*ambient)
        emb = embed_diagram(sub_datum, amb_datum, nodes)
        p = find_minus_one_points(sub_datum, denominator_bound=4)[0]
        result = propagate(emb, p, seed=0)
        assert result.report.order == result.sub_report.order == 2
        assert result.local_model_label == (
            f"(C^{2 * sub_datum.rank}/W_p) x C^{2 * extra}"
        )
        # the found point is genuinely stabilized by order-2 subgroup
        check = stabilizer(amb_datum, result.point)
        assert check.order == 2

    def test_seeded_determinism(self):
        emb = embed_diagram("B_3", "F_4", [1, 2, 3])
        p = find_minus_one_points(build_root_datum("B", 3))[0]
        r1 = propagate(emb, p, seed=7)
        r2 = propagate(emb, p, seed=7)
        assert r1.point == r2.point and r1.attempts == r2.attempts

    def test_fine_denominator_must_be_coprime(self):
        emb = embed_diagram("B_3", "F_4", [1, 2, 3])
        p = find_minus_one_points(build_root_datum("B", 3))[0]
        with pytest.raises(ValueError):
            propagate(emb, p, fine_denominator=2)
