"""Bigraded Hodge-polynomial arithmetic over Z.

A :class:`BigradedPoly` is a finitely supported map (p, q) -> Z.  The graded
symmetric power uses the Koszul sign convention: classes of odd total degree
anticommute, so for a surface the l-th symmetric power of its cohomology
matches the cohomology of the l-th symmetric product of the surface.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


class BigradedPoly:
    """Integer polynomial in two formal variables indexed by bidegree (p, q)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        c = {}
        for key, val in (coeffs or {}).items():
            if val:
                p, q = key
                if p < 0 or q < 0:
                    raise ValueError(f"negative bidegree {key}")
                c[(int(p), int(q))] = val
        self.coeffs = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, p, q, c=1):
        return cls({(p, q): c})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = BigradedPoly.constant(other)
        return isinstance(other, BigradedPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = BigradedPoly.constant(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BigradedPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BigradedPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = BigradedPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BigradedPoly({k: v * other for k, v in self.coeffs.items()})
        out = {}
        for (p1, q1), c1 in self.coeffs.items():
            for (p2, q2), c2 in other.coeffs.items():
                k = (p1 + p2, q1 + q2)
                out[k] = out.get(k, 0) + c1 * c2
        return BigradedPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = BigradedPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __getitem__(self, key):
        return self.coeffs.get(key, 0)

    def specialize(self, x0, y0):
        """Evaluate at integers (x0, y0)."""
        return sum(c * x0**p * y0**q for (p, q), c in self.coeffs.items())

    def is_hodge_symmetric(self):
        return all(self[(q, p)] == c for (p, q), c in self.coeffs.items())

    def is_centrally_symmetric(self, center):
        """h^{c+p, c+q} == h^{c-p, c-q} for all (p, q)."""
        return all(
            self[(2 * center - p, 2 * center - q)] == c
            for (p, q), c in self.coeffs.items()
        )

    def has_integer_coeffs(self):
        return all(Fraction(c).denominator == 1 for c in self.coeffs.values())

    def to_int(self):
        """Force all coefficients to int; raises if any is fractional."""
        out = {}
        for k, v in self.coeffs.items():
            f = Fraction(v)
            if f.denominator != 1:
                raise ValueError(f"non-integer coefficient {v} at {k}")
            out[k] = int(f)
        return BigradedPoly(out)

    def max_degree(self):
        if not self.coeffs:
            return 0
        return max(p + q for p, q in self.coeffs)

    def to_json_rows(self):
        return [
            {"p": p, "q": q, "h": int(c)}
            for (p, q), c in sorted(self.coeffs.items())
        ]

    @classmethod
    def from_json_rows(cls, rows):
        return cls({(r["p"], r["q"]): r["h"] for r in rows})

    def diamond_text(self):
        """Aligned text rendering of the Hodge diamond."""
        if not self.coeffs:
            return "0"
        width = max(len(str(c)) for c in self.coeffs.values()) + 2
        lines = []
        top = max(p + q for p, q in self.coeffs)
        for s in range(top + 1):
            entries = [str(self[(p, s - p)]) for p in range(s, -1, -1)]
            row = "".join(e.center(width) for e in entries)
            lines.append(row.center(width * (top + 1)).rstrip())
        return "\n".join(lines)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (p, q), c in sorted(self.coeffs.items()):
            mono = "".join(
                [f"x^{p}" if p > 1 else ("x" if p == 1 else ""),
                 f"y^{q}" if q > 1 else ("y" if q == 1 else "")]
            )
            parts.append(f"{c}{mono}" if mono else str(c))
        return " + ".join(parts)


def abelian_surface():
    """h(A) = ((1+x)(1+y))^2."""
    row = BigradedPoly({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    return row * row


def two_torsion():
    """h(A_2) = 16: the sixteen 2-torsion points of an abelian surface."""
    return BigradedPoly.constant(16)


def kummer_singular():
    """h(K) for K = A/(+-1): the +-1-invariant part of h(A)."""
    return BigradedPoly({(0, 0): 1, (2, 0): 1, (1, 1): 4, (0, 2): 1, (2, 2): 1})


def kummer_k3():
    """h(X) for the Kummer K3 surface: h(K) + h(A_2) * xy."""
    return kummer_singular() + two_torsion() * BigradedPoly.monomial(1, 1)


def partitions(n):
    """Partitions of n as multiplicity tuples (a_1, ..., a_n), sum i*a_i = n.

    The empty partition of 0 is the empty tuple.
    """
    if n == 0:
        yield ()
        return

    def rec(remaining, max_part):
        if remaining == 0:
            yield {}
            return
        for part in range(min(remaining, max_part), 0, -1):
            for count in range(remaining // part, 0, -1):
                for rest in rec(remaining - part * count, part - 1):
                    d = dict(rest)
                    d[part] = count
                    yield d
    for d in rec(n, n):
        yield tuple(d.get(i, 0) for i in range(1, n + 1))


def partition_size(alpha):
    """|alpha| = number of parts."""
    return sum(alpha)


def sym_power(h, l):
    """Graded symmetric power Sym^l of the bigraded space with dimensions h.

    Computed as the coefficient of T^l in
    prod_{p+q even} (1 - x^p y^q T)^(-h^{p,q})
    * prod_{p+q odd} (1 + x^p y^q T)^(h^{p,q}).
    """
    if l < 0:
        raise ValueError("negative symmetric power")
    if any(c < 0 for c in h.coeffs.values()):
        raise ValueError("sym_power requires nonnegative coefficients")
    series = [BigradedPoly.one()] + [BigradedPoly.zero()] * l
    for (p, q), c in h.coeffs.items():
        mono = BigradedPoly.monomial(p, q)
        powers = [BigradedPoly.one()]
        for _ in range(l):
            powers.append(powers[-1] * mono)
        if (p + q) % 2 == 0:
            factor = [powers[j] * comb(c - 1 + j, j) for j in range(l + 1)]
        else:
            factor = [powers[j] * comb(c, j) for j in range(l + 1)]
        new = [BigradedPoly.zero() for _ in range(l + 1)]
        for a in range(l + 1):
            if not series[a]:
                continue
            for b in range(l + 1 - a):
                if factor[b]:
                    new[a + b] = new[a + b] + series[a] * factor[b]
        series = new
    return series[l]


def goettsche(surface_hodge, n):
    """Hodge polynomial of the Hilbert scheme of n points via the partition sum.

    sum over partitions alpha of n of (xy)^(n - |alpha|) prod_i Sym^{a_i}(h).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    xy = BigradedPoly.monomial(1, 1)
    total = BigradedPoly.zero()
    for alpha in partitions(n):
        term = xy ** (n - partition_size(alpha))
        for a_i in alpha:
            if a_i:
                term = term * sym_power(surface_hodge, a_i)
        total = total + term
    return total


def specialize(h, x0, y0):
    return h.specialize(x0, y0)


SPECIALIZATIONS = {
    "euler": (-1, -1),
    "signature": (-1, 1),
}


def generating_series(surface_hodge, n_max, specialization=None):
    """Values of goettsche(h, n) for n = 0..n_max, optionally specialized.

    specialization may be None, a name from SPECIALIZATIONS, or an (x0, y0)
    pair.  Returns a list of BigradedPoly or of integers.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if isinstance(specialization, str):
        specialization = SPECIALIZATIONS[specialization.lower()]
    out = []
    for n in range(n_max + 1):
        poly = goettsche(surface_hodge, n)
        if specialization is None:
            out.append(poly)
        else:
            out.append(poly.specialize(*specialization))
    return out
