"""Torsion points of A tensor Lambda and their Weyl stabilizers.

Points are stored intrinsically in the simple-coroot basis of Lambda as
tuples of (Q/Z)^4 entries with a common denominator.  Stabilizers come from
orbit-stabilizer with Schreier generators, so the full group never needs to
be materialized; when the group order is known the stabilizer order is read
off from the orbit size.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .intlinalg import (
    freeze,
    identity,
    mat_mul,
    rational_nullspace,
    clear_denominators,
    transpose,
)
from .rootdata import DiagramEmbedding, WeylGroup


@dataclass(frozen=True)
class TorsionPoint:
    """A finite-order point of A tensor Lambda in simple-coroot coordinates.

    coords[i] is the (Q/Z)^4 entry over the i-th simple coroot, stored as
    four integers modulo den.
    """

    den: int
    coords: tuple

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("denominator must be positive")
        for entry in self.coords:
            if len(entry) != 4 or any(not 0 <= x < self.den for x in entry):
                raise ValueError("coordinates must be 4-vectors mod den")

    @property
    def rank(self):
        return len(self.coords)

    @classmethod
    def zero(cls, rank):
        return cls(1, tuple((0, 0, 0, 0) for _ in range(rank)))

    @classmethod
    def from_fractions(cls, rows):
        fracs = [[Fraction(x) % 1 for x in row] for row in rows]
        den = lcm(*(f.denominator for row in fracs for f in row), 1)
        coords = tuple(
            tuple(int(f * den) for f in row) for row in fracs
        )
        return cls(den, coords).reduced()

    def as_fractions(self):
        return [
            [Fraction(x, self.den) for x in row] for row in self.coords
        ]

    def reduced(self):
        """Canonical form with the smallest common denominator."""
        g = self.den
        for row in self.coords:
            for x in row:
                g = gcd(g, x)
        if g <= 1:
            return self
        return TorsionPoint(
            self.den // g,
            tuple(tuple(x // g for x in row) for row in self.coords),
        )

    def is_zero(self):
        return all(x == 0 for row in self.coords for x in row)

    def add(self, other):
        d = lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        return TorsionPoint(
            d,
            tuple(
                tuple((x * a + y * b) % d for x, y in zip(r1, r2))
                for r1, r2 in zip(self.coords, other.coords)
            ),
        ).reduced()

    def apply(self, g):
        """Image under an integer matrix acting on the coroot coordinates."""
        out = []
        for k in range(len(g)):
            row = [0, 0, 0, 0]
            for j, c in enumerate(g[k]):
                if c:
                    for t in range(4):
                        row[t] += c * self.coords[j][t]
            out.append(tuple(x % self.den for x in row))
        return TorsionPoint(self.den, tuple(out))

    def to_json(self):
        return [
            [f"{Fraction(x, self.den)}" for x in row] for row in self.coords
        ]

    @classmethod
    def from_json(cls, rows):
        return cls.from_fractions(
            [[Fraction(s) for s in row] for row in rows]
        )


def _group_parts(action):
    """Accept a WeylGroup, a LatticeAction, or a RootDatum-like source.

    Returns (generators, order_or_None, elements_or_None).
    """
    group = getattr(action, "group", action)
    if isinstance(group, WeylGroup):
        return group.generators, group.order, group.elements
    if hasattr(group, "weyl_generators"):
        return list(group.weyl_generators), group.expected_order(), None
    return list(group), None, None


@dataclass(frozen=True)
class StabilizerReport:
    generators: tuple
    order: int
    orbit_size: int
    action_classification: str  # trivial | minus_one_local_model | other
    local_model_label: str
    elements: tuple = None
    crepant: str = None

    def to_dict(self):
        return {
            "order": self.order,
            "orbit_size": self.orbit_size,
            "classification": self.action_classification,
            "local_model": self.local_model_label,
            "crepant": self.crepant,
            "generators": [[list(r) for r in g] for g in self.generators],
        }


def _closure(generators, cap):
    seen = {freeze(identity(len(generators[0])))} if generators else set()
    if not generators:
        return seen
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = freeze(mat_mul(s, x))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        if len(seen) > cap:
            raise ValueError(f"stabilizer closure exceeded cap {cap}")
    return seen


def _small_generating_set(schreier, rank, cap):
    gens = []
    have = {freeze(identity(rank))}
    for s in schreier:
        if s not in have:
            gens.append(s)
            have = _closure(gens, cap)
    return gens, have


def stabilizer(action, point, orbit_cap=10**6, element_cap=10**5):
    """Exact W-stabilizer of a torsion point by orbit-stabilizer.

    Builds the orbit with coset witnesses, extracts Schreier generators for
    the stabilizer, and classifies the subgroup.
    """
    generators, order, _ = _group_parts(action)
    rank = len(generators[0])
    ident = freeze(identity(rank))
    point = point.reduced()
    witness = {point: ident}
    frontier = [point]
    gen_list = [freeze(g) for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            ux = witness[x]
            for s in gen_list:
                y = x.apply(s)
                if y not in witness:
                    witness[y] = freeze(mat_mul(s, ux))
                    nxt.append(y)
        frontier = nxt
        if len(witness) > orbit_cap:
            raise ValueError(f"orbit exceeded cap {orbit_cap}")
    orbit_size = len(witness)
    expected = None
    if order is not None:
        if order % orbit_size != 0:
            raise AssertionError("orbit size does not divide the group order")
        expected = order // orbit_size
    # second pass over the closed edges: collect Schreier generators
    # u_y^-1 s u_x, stopping once the closure reaches the expected order
    gens = []
    elements = {ident}
    for x, ux in witness.items():
        for s in gen_list:
            y = x.apply(s)
            uy_inv = _matrix_inverse(witness[y])
            w = freeze(mat_mul(uy_inv, mat_mul(s, ux)))
            if w not in elements:
                gens.append(w)
                elements = _closure(gens, element_cap)
        if expected is not None and len(elements) == expected:
            break
    stab_order = len(elements)
    if expected is not None and stab_order != expected:
        raise AssertionError("orbit-stabilizer count mismatch")
    minus = freeze([[-x for x in row] for row in identity(rank)])
    crepant = None
    if stab_order == 1:
        cls = "trivial"
        label = "smooth point"
    elif stab_order == 2 and minus in elements:
        cls = "minus_one_local_model"
        label = f"C^{2 * rank}/+-1"
        # the +-1 quotient is resolvable only in one surface factor
        crepant = "resolvable" if rank == 1 else "no_crepant_resolution"
    else:
        cls = "other"
        label = f"subgroup of order {stab_order}"
    return StabilizerReport(
        generators=tuple(gens),
        order=stab_order,
        orbit_size=orbit_size,
        action_classification=cls,
        local_model_label=label,
        elements=tuple(sorted(elements)),
        crepant=crepant,
    )


def _matrix_inverse(m):
    from .rootdata import _integer_inverse

    return _integer_inverse(m)


def two_torsion_points(rank):
    """All points of A tensor Lambda killed by 2, in coroot coordinates."""
    entries = list(itertools.product((0, 1), repeat=4))
    for combo in itertools.product(entries, repeat=rank):
        yield TorsionPoint(2, combo).reduced()


def _two_torsion_orbit_reps(generators, rank):
    """Orbit partition of all 2-torsion points, vectorized over bit codes.

    A point is encoded as a 4*rank-bit integer whose j-th nibble is the mod-2
    coordinate 4-vector over the j-th simple coroot; a generator acts by
    XORing nibbles, which applies to every point at once as array shifts.
    Yields (representative_code, orbit_size).
    """
    n = 1 << (4 * rank)
    idx = np.arange(n, dtype=np.int64)
    nibbles = [(idx >> (4 * j)) & 15 for j in range(rank)]
    parent = np.arange(n, dtype=np.int64)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in generators:
        image = np.zeros(n, dtype=np.int64)
        for k in range(rank):
            ynib = np.zeros(n, dtype=np.int64)
            for j in range(rank):
                if g[k][j] % 2:
                    ynib ^= nibbles[j]
            image |= ynib << (4 * k)
        for a, b in zip(idx, image):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    roots = np.array([find(a) for a in idx])
    reps, counts = np.unique(roots, return_counts=True)
    return list(zip(reps.tolist(), counts.tolist()))


def _decode_two_torsion(code, rank):
    coords = tuple(
        tuple((code >> (4 * j + t)) & 1 for t in range(4))
        for j in range(rank)
    )
    return TorsionPoint(2, coords).reduced()


def find_minus_one_points(action, denominator_bound=2, orbit_cap=10**6):
    """Orbit representatives whose stabilizer is exactly {+-identity}.

    A stabilizer containing -1 forces 2p = 0, so only 2-torsion points can
    qualify and every denominator bound >= 2 scans the same candidate set.
    When -1 lies in W it stabilizes every 2-torsion point, so any orbit of
    size |W|/2 automatically has stabilizer exactly {+-1}; the scan therefore
    only needs orbit sizes, never per-point stabilizer chains.
    Returns a list of TorsionPoint orbit representatives.
    """
    if denominator_bound < 2:
        raise ValueError("denominator bound must be at least 2")
    generators, order, elements = _group_parts(action)
    rank = len(generators[0])
    if (1 << (4 * rank)) > orbit_cap:
        raise ValueError(f"2-torsion candidate set exceeds cap {orbit_cap}")
    candidates = [
        (code, size)
        for code, size in _two_torsion_orbit_reps(generators, rank)
        if code != 0 and (order is None or size * 2 == order)
    ]
    if order is not None:
        minus = freeze([[-x for x in row] for row in identity(rank)])
        if elements is not None:
            has_minus = minus in elements
        elif candidates:
            # one stabilizer chain settles whether -1 is in the group
            first = _decode_two_torsion(candidates[0][0], rank)
            has_minus = minus in stabilizer(action, first).elements
        else:
            has_minus = False
        if not has_minus:
            return []
        return [_decode_two_torsion(code, rank) for code, _ in candidates]
    # unknown group order: fall back to explicit stabilizers
    found = []
    for code, _size in candidates:
        p = _decode_two_torsion(code, rank)
        report = stabilizer(action, p, orbit_cap=orbit_cap)
        if report.action_classification == "minus_one_local_model":
            found.append(p)
    return found


def point_from_ambient(datum, ambient_rows):
    """Convert a point given in the ambient Z^m coordinates of the coroots.

    ambient_rows is an m-list of 4-vectors of rationals.  Returns a
    TorsionPoint y in coroot coordinates with C y = x modulo 1, where C has
    the simple coroots as columns, or None when no solution exists.  The
    solution is one representative; it is unique up to points killed by the
    inclusion Lambda in Z^m.
    """
    from .intlinalg import smith_normal_form, mat_vec

    cols = [list(c) for c in datum.simple_coroots]
    cmat = transpose(cols)  # m x r, columns are the coroots
    m, r = len(cmat), len(cmat[0])
    d, u, v = smith_normal_form(cmat)
    x = [[Fraction(val) % 1 for val in row] for row in ambient_rows]
    ycols = []
    for t in range(4):
        xcol = [x[i][t] for i in range(m)]
        ux = mat_vec(u, xcol)
        z = [Fraction(0)] * r
        for i in range(m):
            di = d[i][i] if i < r else 0
            if di == 0:
                if ux[i] % 1 != 0:
                    return None
            else:
                z[i] = ux[i] / di
        ycols.append(mat_vec(v, z))
    rows = [[ycols[t][j] for t in range(4)] for j in range(r)]
    return TorsionPoint.from_fractions(rows)


@dataclass(frozen=True)
class PropagationResult:
    point: TorsionPoint
    report: StabilizerReport
    sub_report: StabilizerReport
    attempts: int
    seed: int
    local_model_label: str


def propagate(
    embedding: DiagramEmbedding,
    p: TorsionPoint,
    fine_denominator=3,
    seed=0,
    max_attempts=40,
    orbit_cap=10**6,
):
    """Push a sub-lattice point into the ambient lattice keeping its stabilizer.

    The image of p is perturbed by a fine-torsion point q of the orthogonal
    complement N of the sub-lattice (with respect to the invariant form);
    genericity of q is replaced by a verification loop: draw q from a seeded
    generator and retry until the ambient stabilizer order matches the
    stabilizer of p.
    """
    sub, amb = embedding.sub, embedding.ambient
    if gcd(fine_denominator, p.den) != 1:
        raise ValueError("fine denominator must be coprime to the point order")
    sub_report = stabilizer(sub, p, orbit_cap=orbit_cap)
    cmap = [list(row) for row in embedding.coroot_map]
    image_rows = []
    fracs = p.as_fractions()
    for k in range(amb.rank):
        row = [Fraction(0)] * 4
        for j in range(sub.rank):
            if cmap[k][j]:
                for t in range(4):
                    row[t] += cmap[k][j] * fracs[j][t]
        image_rows.append(row)
    gram = [list(r) for r in amb.gram()]
    pairing = mat_mul(transpose(cmap), gram)
    basis = [clear_denominators(vcol) for vcol in rational_nullspace(pairing)]
    k_extra = len(basis)
    rng = random.Random(seed)
    f = fine_denominator
    for attempt in range(1, max_attempts + 1):
        q_rows = [[Fraction(0)] * 4 for _ in range(amb.rank)]
        for b in basis:
            for t in range(4):
                a = rng.randrange(f)
                for i in range(amb.rank):
                    q_rows[i][t] += Fraction(a * b[i], f)
        total = [
            [image_rows[i][t] + q_rows[i][t] for t in range(4)]
            for i in range(amb.rank)
        ]
        cand = TorsionPoint.from_fractions(total)
        report = stabilizer(amb, cand, orbit_cap=orbit_cap)
        if report.order == sub_report.order:
            label = (
                f"(C^{2 * sub.rank}/W_p) x C^{2 * k_extra}"
            )
            return PropagationResult(
                point=cand,
                report=report,
                sub_report=sub_report,
                attempts=attempt,
                seed=seed,
                local_model_label=label,
            )
    raise RuntimeError(
        f"no generic perturbation found in {max_attempts} attempts"
    )
