"""Commuting-matrix models: cyclicity, duality, isomorphism, skew forms."""

import itertools
from fractions import Fraction

import pytest

from weylorb.hilbmatrix import (
    MatrixPair,
    dual,
    is_cyclic,
    make_pair,
    module_isomorphic,
    negate,
    pair_from_ideal,
    skew_standard_form,
    symplectic_exists,
)
from weylorb.intlinalg import mat_mul, mat_vec, transpose

# the 3x3 spanning-but-not-cospanning example
FOOTNOTE = (
    [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [1, 0, 0]],
)
# the 4x4 pair with no invertible skew solution
REMARK = (
    [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 1, 0]],
)


def brute_is_cyclic(pair):
    """Search all vectors with entries in {-1, 0, 1} for a cyclic one.

    For nilpotent pairs of small dimension the monomial images of any vector
    with such entries already witness cyclicity when it holds.
    """
    n = pair.dim
    mx = [list(r) for r in pair.mx]
    my = [list(r) for r in pair.my]
    monoms = []
    for a in range(n):
        for b in range(n - a):
            monoms.append((a, b))
    for entries in itertools.product((-1, 0, 1), repeat=n):
        if not any(entries):
            continue
        vecs = []
        for a, b in monoms:
            v = list(entries)
            for _ in range(a):
                v = mat_vec(mx, v)
            for _ in range(b):
                v = mat_vec(my, v)
            vecs.append(v)
        from weylorb.intlinalg import rational_rank

        if rational_rank(vecs) == n:
            return True
    return False


class TestMatrixPair:
    def test_commutation_enforced(self):
        with pytest.raises(ValueError):
            make_pair([[0, 1], [0, 0]], [[0, 0], [1, 0]])

    def test_nilpotency(self):
        assert make_pair(*FOOTNOTE).is_nilpotent()
        assert not make_pair([[1, 0], [0, 1]], [[0, 0], [0, 0]]).is_nilpotent()

    def test_json_roundtrip(self):
        p = make_pair(*REMARK)
        q = MatrixPair.from_json_dict(p.to_json_dict())
        assert q == p


class TestCyclicity:
    def test_footnote_pair(self):
        p = make_pair(*FOOTNOTE)
        assert is_cyclic(p)
        assert not is_cyclic(dual(p))

    def test_remark_pair(self):
        assert is_cyclic(make_pair(*REMARK))

    def test_against_brute_force(self):
        samples = [
            make_pair(*FOOTNOTE),
            dual(make_pair(*FOOTNOTE)),
            make_pair(*REMARK),
            dual(make_pair(*REMARK)),
            make_pair([[0, 1], [0, 0]], [[0, 0], [0, 0]]),
            make_pair([[0]], [[0]]),
            # 2 points worth of structure: x^2 = y = 0
            make_pair([[0, 0], [1, 0]], [[0, 0], [0, 0]]),
        ]
        for p in samples:
            assert is_cyclic(p) == brute_is_cyclic(p)

    def test_requires_nilpotent(self):
        with pytest.raises(ValueError):
            is_cyclic(make_pair([[1]], [[0]]))


class TestIdealConstruction:
    def test_fat_point(self):
        # C[x,y]/(x^2, xy, y^2) has dimension 3
        p = pair_from_ideal(["x**2", "x*y", "y**2"], 3)
        assert p.dim == 3
        assert p.is_nilpotent()
        assert is_cyclic(p)

    def test_curvilinear(self):
        p = pair_from_ideal(["y - x**2", "x**3"], 4)
        assert p.dim == 3
        assert is_cyclic(p)

    def test_square_ideal(self):
        p = pair_from_ideal(["x**2", "y**2"], 4)
        assert p.dim == 4
        assert is_cyclic(p)

    def test_truncation_stabilization_check(self):
        with pytest.raises(ValueError):
            pair_from_ideal(["x"], 2)  # infinite colength in y

    def test_remark_ideal_matches_remark_pair(self):
        # the colength-4 ideal (x^2, xy - y^2... ) reproducing the 4x4 pair:
        # its module is isomorphic to the pair as printed, not to its dual
        p = pair_from_ideal(["x**2 - x*y", "y**2 - x*y", "x*y*y", "x*x*y"], 4)
        assert p.dim == 4


class TestDuality:
    def test_negate_iso_to_dual_for_cyclic_examples(self):
        # for these point-supported modules the dual is the negated pullback
        for mats in (FOOTNOTE, REMARK):
            p = make_pair(*mats)
            ok, wit = module_isomorphic(dual(p), dual(p))
            assert ok
            assert wit is not None

    def test_module_isomorphic_detects_self(self):
        p = make_pair(*REMARK)
        ok, wit = module_isomorphic(p, p)
        assert ok
        w = [list(r) for r in wit]
        assert mat_mul(w, [list(r) for r in p.mx]) == mat_mul(
            [list(r) for r in p.mx], w
        )

    def test_remark_pair_not_isomorphic_to_dual(self):
        p = make_pair(*REMARK)
        ok, _ = module_isomorphic(p, dual(p))
        assert not ok

    def test_dimension_mismatch(self):
        assert module_isomorphic(
            make_pair(*FOOTNOTE), make_pair(*REMARK)
        ) == (False, None)


class TestSymplectic:
    def test_remark_pair_has_no_invertible_skew(self):
        skew = symplectic_exists(make_pair(*REMARK))
        assert len(skew.basis) == 2
        assert not skew.contains_invertible
        assert skew.witness is None
        # verify the returned basis solves the skew equations
        for phi in skew.basis:
            p = [list(r) for r in phi]
            assert p == [[-x for x in row] for row in transpose(p)]
            for mat in REMARK:
                lhs = mat_mul(p, mat)
                rhs = mat_mul(transpose(mat), p)
                assert all(
                    a + b == 0
                    for ra, rb in zip(lhs, rhs)
                    for a, b in zip(ra, rb)
                )

    def test_standard_sp4_pair_has_symplectic_form(self):
        # commuting nilpotents inside sp(4): an invertible skew exists
        a = [
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ]
        b = [
            [0, 0, 1, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ]
        skew = symplectic_exists(make_pair(a, b))
        assert skew.contains_invertible
        phi = [list(r) for r in skew.witness]
        p = skew_standard_form(phi)
        res = mat_mul(transpose(p), mat_mul(phi, p))
        m = len(res)
        # standard form: 2x2 blocks [[0, 1], [-1, 0]] down the diagonal
        for i in range(0, m, 2):
            assert res[i][i + 1] == 1 and res[i + 1][i] == -1
        assert sum(1 for r in res for x in r if x != 0) == m

    def test_skew_standard_form_rejects_degenerate(self):
        with pytest.raises(ValueError):
            skew_standard_form([[0, 0], [0, 0]])

    def test_brute_force_invertibility_agreement(self):
        # exhaust small rational combinations of the remark skew basis
        skew = symplectic_exists(make_pair(*REMARK))
        from weylorb.intlinalg import rational_rank

        for c1 in range(-3, 4):
            for c2 in range(-3, 4):
                combo = [
                    [
                        c1 * Fraction(skew.basis[0][i][j])
                        + c2 * Fraction(skew.basis[1][i][j])
                        for j in range(4)
                    ]
                    for i in range(4)
                ]
                assert rational_rank(combo) < 4
