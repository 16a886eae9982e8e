"""Commuting-matrix models of punctual subschemes of length n in the plane.

A module over C[x,y] supported at the origin is a pair of commuting nilpotent
matrices; structure sheaves of subschemes are the cyclic ones.  This module
constructs pairs from ideals, decides cyclicity, duality, isomorphism, and
whether the module carries a compatible symplectic structure.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .intlinalg import mat_mul, rational_rank, rational_nullspace, transpose


@dataclass(frozen=True)
class MatrixPair:
    dim: int
    mx: tuple
    my: tuple

    def __post_init__(self):
        a = [list(r) for r in self.mx]
        b = [list(r) for r in self.my]
        if mat_mul(a, b) != mat_mul(b, a):
            raise ValueError("matrices do not commute")

    def is_nilpotent(self):
        for m in (self.mx, self.my):
            p = [list(r) for r in m]
            base = [list(r) for r in m]
            for _ in range(self.dim - 1):
                p = mat_mul(p, base)
            if any(x != 0 for row in p for x in row):
                return False
        return True

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "mx": [[str(Fraction(x)) for x in r] for r in self.mx],
            "my": [[str(Fraction(x)) for x in r] for r in self.my],
        }

    @classmethod
    def from_json_dict(cls, d):
        conv = lambda rows: tuple(
            tuple(_as_number(Fraction(s)) for s in r) for r in rows
        )
        return cls(dim=d["dim"], mx=conv(d["mx"]), my=conv(d["my"]))


def _as_number(f):
    f = Fraction(f)
    return int(f) if f.denominator == 1 else f


def make_pair(mx, my):
    mx = tuple(tuple(_as_number(x) for x in r) for r in mx)
    my = tuple(tuple(_as_number(x) for x in r) for r in my)
    return MatrixPair(dim=len(mx), mx=mx, my=my)


def _monomials(n):
    """Monomials (a, b) with a + b < n, ordered by degree then x-power."""
    out = []
    for d in range(n):
        for a in range(d, -1, -1):
            out.append((a, d - a))
    return out


def _poly_to_vector(poly, monomials, index):
    vec = [Fraction(0)] * len(monomials)
    for (a, b), coeff in poly.terms():
        key = (a, b)
        if key in index:
            vec[index[key]] += Fraction(coeff.p, coeff.q)
        # degree >= truncation: the term dies in the truncated ring
    return vec


def _rref(rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _quotient_data(generators, truncation):
    x, y = sympy.symbols("x y")
    polys = [
        sympy.Poly(sympy.sympify(g, locals={"x": x, "y": y}), x, y, domain="QQ")
        for g in generators
    ]
    monomials = _monomials(truncation)
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for g in polys:
        for (a, b) in monomials:
            prod = g * sympy.Poly(x**a * y**b, x, y, domain="QQ")
            vec = _poly_to_vector(prod, monomials, index)
            if any(vec):
                rows.append(vec)
    rref, pivots = _rref(rows)
    basis = [m for i, m in enumerate(monomials) if i not in pivots]
    return monomials, index, rref, pivots, basis


def _reduce(vec, rref, pivots, basis_index):
    v = list(vec)
    for row, p in zip(rref, pivots):
        if v[p] != 0:
            c = v[p]
            v = [a - c * b for a, b in zip(v, row)]
    out = [Fraction(0)] * len(basis_index)
    for i, val in enumerate(v):
        if val != 0:
            out[basis_index[i]] = val
    return out


def pair_from_ideal(generators, truncation):
    """Multiplication matrices on C[x,y]/I, via the degree-truncated ring.

    The caller supplies a truncation N with (x,y)^N contained in I; this is
    checked by requiring the colength to be the same at N and N + 1.
    """
    if truncation < 1:
        raise ValueError("truncation must be positive")
    _, _, _, _, basis = _quotient_data(generators, truncation)
    _, _, _, _, basis_next = _quotient_data(generators, truncation + 1)
    if len(basis) != len(basis_next):
        raise ValueError(
            f"colength not stabilized: {len(basis)} at degree {truncation} "
            f"but {len(basis_next)} at degree {truncation + 1}; "
            "increase the truncation or check that the ideal has finite "
            "colength"
        )
    monomials, index, rref, pivots, basis = _quotient_data(
        generators, truncation
    )
    basis_index = {}
    for i, m in enumerate(monomials):
        if i not in pivots:
            basis_index[i] = len(basis_index)
    mats = []
    for shift in ((1, 0), (0, 1)):
        cols = []
        for (a, b) in basis:
            target = (a + shift[0], b + shift[1])
            vec = [Fraction(0)] * len(monomials)
            if target in index:
                vec[index[target]] = Fraction(1)
            cols.append(_reduce(vec, rref, pivots, basis_index))
        m = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
        mats.append(m)
    return make_pair(*mats)


def is_cyclic(pair):
    """Whether the module has a cyclic vector.

    For a commuting nilpotent pair this is equivalent, by Nakayama, to the
    image of (mx, my) having codimension one.
    """
    if not pair.is_nilpotent():
        raise ValueError("cyclicity criterion requires a nilpotent pair")
    stacked = [
        list(rx) + list(ry) for rx, ry in zip(pair.mx, pair.my)
    ]
    return pair.dim - rational_rank(stacked) == 1


def dual(pair):
    """The Ext-dual module: the transpose pair."""
    return make_pair(transpose(pair.mx), transpose(pair.my))


def negate(pair):
    """Pullback along the inversion of the surface: the negated pair."""
    return make_pair(
        [[-x for x in r] for r in pair.mx],
        [[-x for x in r] for r in pair.my],
    )


def _sylvester_solution_space(a, b):
    """Basis of {P : P a_x = b_x P and P a_y = b_y P}."""
    m = a.dim
    rows = []
    for (ax, bx) in ((a.mx, b.mx), (a.my, b.my)):
        for i in range(m):
            for j in range(m):
                # coefficient of P[k][l] in (P ax - bx P)[i][j]
                row = [Fraction(0)] * (m * m)
                for l in range(m):
                    row[i * m + l] += Fraction(ax[l][j])
                for k in range(m):
                    row[k * m + j] -= Fraction(bx[i][k])
                rows.append(row)
    basis = rational_nullspace(rows)
    return [
        [[v[i * m + j] for j in range(m)] for i in range(m)] for v in basis
    ]


def _subspace_contains_invertible(basis, dim, seed=0):
    """Decide whether a span of matrices contains an invertible one.

    The determinant of the generic element is an exact polynomial in the
    basis parameters; over an infinite field it vanishes identically iff the
    subspace has no invertible element.  A witness is produced by seeded
    sampling when the determinant is nonzero.
    """
    if not basis:
        return False, None
    ts = sympy.symbols(f"t0:{len(basis)}")
    generic = sympy.zeros(dim, dim)
    for t, b in zip(ts, basis):
        generic += t * sympy.Matrix(
            [[sympy.Rational(x) for x in row] for row in b]
        )
    det = generic.det(method="berkowitz")
    det = sympy.expand(det)
    if det == 0:
        return False, None
    rng = random.Random(seed)
    for bound in (1, 2, 3, 5, 9):
        for _ in range(200):
            coeffs = [rng.randint(-bound, bound) for _ in basis]
            val = det.subs(dict(zip(ts, coeffs)))
            if val != 0:
                witness = [
                    [
                        sum(Fraction(c) * Fraction(b[i][j]) for c, b in zip(coeffs, basis))
                        for j in range(dim)
                    ]
                    for i in range(dim)
                ]
                return True, witness
    raise AssertionError("nonzero determinant but no witness found")


def module_isomorphic(a, b, seed=0):
    """Simultaneous-conjugacy test; returns (bool, witness P or None)."""
    if a.dim != b.dim:
        return False, None
    basis = _sylvester_solution_space(a, b)
    return _subspace_contains_invertible(basis, a.dim, seed)


@dataclass(frozen=True)
class SkewSolutionSpace:
    basis: tuple
    contains_invertible: bool
    witness: tuple = None


def symplectic_exists(pair, seed=0):
    """All skew Phi with Phi M + M^T Phi = 0 for both matrices of the pair.

    contains_invertible reports whether the module is a symplectic
    (self-minus-dual) one; when true a witness Phi is included.
    """
    m = pair.dim
    n_params = m * (m - 1) // 2
    positions = list(itertools.combinations(range(m), 2))
    rows = []
    for mat in (pair.mx, pair.my):
        mt = transpose(mat)
        for i in range(m):
            for j in range(m):
                row = [Fraction(0)] * n_params
                for idx, (k, l) in enumerate(positions):
                    # Phi[k][l] = t_idx, Phi[l][k] = -t_idx
                    # (Phi mat)[i][j] = sum_s Phi[i][s] mat[s][j]
                    if i == k:
                        row[idx] += Fraction(mat[l][j])
                    if i == l:
                        row[idx] -= Fraction(mat[k][j])
                    # (mat^T Phi)[i][j] = sum_s mt[i][s] Phi[s][j]
                    if j == l:
                        row[idx] += Fraction(mt[i][k])
                    if j == k:
                        row[idx] -= Fraction(mt[i][l])
                rows.append(row)
    sols = rational_nullspace(rows) if rows else []
    basis = []
    for v in sols:
        phi = [[Fraction(0)] * m for _ in range(m)]
        for idx, (k, l) in enumerate(positions):
            phi[k][l] = v[idx]
            phi[l][k] = -v[idx]
        basis.append(phi)
    ok, witness = _subspace_contains_invertible(basis, m, seed)
    return SkewSolutionSpace(
        basis=tuple(tuple(tuple(x for x in r) for r in b) for b in basis),
        contains_invertible=ok,
        witness=tuple(tuple(r) for r in witness) if witness else None,
    )


def skew_standard_form(phi):
    """Congruence transform P with P^T Phi P the standard block form J.

    Phi must be an invertible skew matrix over the rationals.
    """
    m = len(phi)
    a = [[Fraction(x) for x in row] for row in phi]
    p = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    # build a symplectic basis pair by pair
    basis = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]

    def form(u, v):
        return sum(
            u[i] * a[i][j] * v[j] for i in range(m) for j in range(m)
        )

    chosen = []
    pool = list(basis)
    while pool:
        u = pool.pop(0)
        v = next((w for w in pool if form(u, w) != 0), None)
        if v is None:
            raise ValueError("form is degenerate on the remaining space")
        pool.remove(v)
        c = form(u, v)
        v = [x / c for x in v]
        rest = []
        for w in pool:
            cu, cv = form(v, w), form(u, w)
            w2 = [
                wi + cu * ui - cv * vi for wi, ui, vi in zip(w, u, v)
            ]
            rest.append(w2)
        pool = rest
        chosen.extend([u, v])
    pmat = transpose(chosen)
    return pmat
