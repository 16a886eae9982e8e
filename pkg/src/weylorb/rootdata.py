"""Coroot lattices and Weyl groups as finite integer-matrix groups.

Each simple type is realized by explicit simple-coroot vectors in an ambient
Z^m (classical types, G_2, F_4) or abstractly through its Cartan matrix
(E types).  All Weyl elements are stored as integer matrices acting on the
basis of simple coroots, so every module downstream sees one uniform
integer-matrix representation.

Conventions.  cartan[i][j] = <alpha_i, alpha_j^vee> = 2(c_i, c_j)/(c_i, c_i)
where c_i are the simple coroot vectors; the simple reflection s_i then acts
on the coroot basis by s_i(e_j) = e_j - cartan[i][j] e_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .intlinalg import freeze, invariant_factors, mat_mul


class GroupOrderCapError(ValueError):
    """Raised when a group enumeration would exceed the configured cap."""


EXCEPTIONAL_ORDERS = {
    ("G", 2): 12,
    ("F", 4): 1152,
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
}


def expected_weyl_order(letter, rank):
    if letter == "A":
        return factorial(rank + 1)
    if letter in ("B", "C"):
        return 2**rank * factorial(rank)
    if letter == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return EXCEPTIONAL_ORDERS[(letter, rank)]


def parse_type(type_label, rank=None):
    """Normalize 'G_2', 'G2', ('G', 2) style input to (letter, rank)."""
    s = str(type_label).strip().upper().replace("_", "")
    letter = s[0]
    if len(s) > 1:
        embedded = int(s[1:])
        if rank is not None and rank != embedded:
            raise ValueError(f"rank {rank} conflicts with label {type_label}")
        rank = embedded
    if rank is None:
        raise ValueError(f"no rank given for type {type_label}")
    _validate_type(letter, rank)
    return letter, int(rank)


def _validate_type(letter, rank):
    ok = (
        (letter == "A" and rank >= 1)
        or (letter in ("B", "C") and rank >= 2)
        or (letter == "D" and rank >= 4)
        or (letter, rank) in EXCEPTIONAL_ORDERS
    )
    if not ok:
        raise ValueError(f"invalid Dynkin type {letter}_{rank}")


@dataclass(frozen=True)
class RootDatum:
    dynkin_type: str
    rank: int
    cartan: tuple
    simple_coroots: tuple
    weyl_generators: tuple

    @property
    def letter(self):
        return self.dynkin_type.split("_")[0]

    def gram(self):
        """A W-invariant integer Gram matrix in the simple-coroot basis.

        (c_i, c_j) is proportional to n_i * cartan[i][j] where n_i is the
        coroot norm, recovered (up to scale) from the Cartan matrix; the
        result is symmetric and invariant under every Weyl generator.
        """
        root_norms = _relative_norms(self.cartan)
        coroot_norms = [1 / n for n in root_norms]
        rows = [
            [coroot_norms[i] * self.cartan[i][j] for j in range(self.rank)]
            for i in range(self.rank)
        ]
        from math import lcm

        scale = lcm(*(x.denominator for row in rows for x in row))
        return freeze([[int(x * scale) for x in row] for row in rows])

    def expected_order(self):
        return expected_weyl_order(self.letter, self.rank)

    def to_json(self):
        return json.dumps(
            {
                "type": self.dynkin_type,
                "rank": self.rank,
                "cartan": [list(r) for r in self.cartan],
                "simple_coroots": [list(r) for r in self.simple_coroots],
                "weyl_generators": [
                    [list(r) for r in g] for g in self.weyl_generators
                ],
            }
        )

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(
            dynkin_type=d["type"],
            rank=d["rank"],
            cartan=freeze(d["cartan"]),
            simple_coroots=freeze(d["simple_coroots"]),
            weyl_generators=tuple(freeze(g) for g in d["weyl_generators"]),
        )


def _simple_coroot_vectors(letter, rank):
    n = rank
    if letter == "A":
        # sum-zero realization in Z^(n+1)
        return [
            [1 if k == i else (-1 if k == i + 1 else 0) for k in range(n + 1)]
            for i in range(n)
        ]
    if letter == "B":
        vs = [
            [1 if k == i else (-1 if k == i + 1 else 0) for k in range(n)]
            for i in range(n - 1)
        ]
        vs.append([0] * (n - 1) + [2])
        return vs
    if letter == "C":
        vs = [
            [1 if k == i else (-1 if k == i + 1 else 0) for k in range(n)]
            for i in range(n - 1)
        ]
        vs.append([0] * (n - 1) + [1])
        return vs
    if letter == "D":
        vs = [
            [1 if k == i else (-1 if k == i + 1 else 0) for k in range(n)]
            for i in range(n - 1)
        ]
        vs.append([0] * (n - 2) + [1, 1])
        return vs
    if letter == "G":
        return [[1, -1, 0], [-2, 1, 1]]
    if letter == "F":
        return [
            [0, 1, -1, 0],
            [0, 0, 1, -1],
            [0, 0, 0, 2],
            [1, -1, -1, -1],
        ]
    return None  # E types: abstract realization


_E_EDGES = {
    6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    8: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}


def _cartan_from_coroots(coroots):
    r = len(coroots)
    out = []
    for i in range(r):
        ci = coroots[i]
        nii = sum(x * x for x in ci)
        row = []
        for j in range(r):
            num = 2 * sum(a * b for a, b in zip(ci, coroots[j]))
            if num % nii != 0:
                raise ValueError("coroot vectors give a non-integral pairing")
            row.append(num // nii)
        out.append(row)
    return out


def build_root_datum(type_label, rank=None):
    """Construct the root datum of a simple type.

    Weyl generators are the simple reflections expressed in the basis of
    simple coroots.
    """
    letter, rank = parse_type(type_label, rank)
    coroots = _simple_coroot_vectors(letter, rank)
    if coroots is None:
        cartan = [
            [2 if i == j else 0 for j in range(rank)] for i in range(rank)
        ]
        for a, b in _E_EDGES[rank]:
            cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
        coroots = [
            [1 if k == i else 0 for k in range(rank)] for i in range(rank)
        ]
    else:
        cartan = _cartan_from_coroots(coroots)
    gens = []
    for i in range(rank):
        g = [
            [
                (1 if k == j else 0) - (cartan[i][j] if k == i else 0)
                for j in range(rank)
            ]
            for k in range(rank)
        ]
        gens.append(freeze(g))
    return RootDatum(
        dynkin_type=f"{letter}_{rank}",
        rank=rank,
        cartan=freeze(cartan),
        simple_coroots=freeze(coroots),
        weyl_generators=tuple(gens),
    )


def coxeter_order(cij, cji):
    """Order of s_i s_j from the off-diagonal Cartan product."""
    return {0: 2, 1: 3, 2: 4, 3: 6}[cij * cji]


def positive_roots(cartan):
    """All roots of the system, in simple-root coordinates, via closure."""
    r = len(cartan)
    basis = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    seen = set(basis)
    frontier = list(basis)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(r):
                pairing = sum(v[j] * cartan[j][i] for j in range(r))
                w = tuple(
                    v[k] - (pairing if k == i else 0) for k in range(r)
                )
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return [v for v in seen if all(x >= 0 for x in v)]


def _relative_norms(cartan):
    """Norms (alpha_i, alpha_i) up to a common scale, from the Cartan matrix."""
    r = len(cartan)
    norms = [None] * r
    norms[0] = Fraction(1)
    pending = [0]
    while pending:
        i = pending.pop()
        for j in range(r):
            if i != j and cartan[i][j] != 0 and norms[j] is None:
                norms[j] = norms[i] * Fraction(cartan[j][i], cartan[i][j])
                pending.append(j)
    if any(v is None for v in norms):
        raise ValueError("Cartan matrix is not connected")
    return norms


def highest_coroot_coefficients(datum):
    """Coefficients of the highest coroot in the simple-coroot basis.

    The highest root theta = sum a_i alpha_i is found by closure; its coroot
    is theta^vee = sum a_i (alpha_i, alpha_i)/(theta, theta) alpha_i^vee.
    Returned sorted ascending.
    """
    roots = positive_roots(datum.cartan)
    marks = max(roots, key=sum)
    norms = _relative_norms(datum.cartan)
    theta_norm = max(n for n, a in zip(norms, marks) if a)
    coeffs = []
    for a, n in zip(marks, norms):
        c = a * n / theta_norm
        if c.denominator != 1:
            raise ValueError("highest coroot is not integral")
        coeffs.append(int(c))
    return tuple(sorted(coeffs))


class WeylGroup:
    """A materialized finite group of integer matrices.

    Conjugacy classes and centralizers are computed lazily; both use the full
    element list, so they are only available for enumerated groups.
    """

    def __init__(self, elements, generators):
        self.elements = list(elements)
        self.generators = list(generators)
        self.order = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._classes = None
        self._np = None

    def __contains__(self, m):
        return freeze(m) in self.index

    def __iter__(self):
        return iter(self.elements)

    def _elements_np(self):
        if self._np is None:
            self._np = np.array(self.elements, dtype=np.int64)
        return self._np

    def centralizer(self, g):
        """All elements commuting with g, as frozen matrices."""
        arr = self._elements_np()
        gm = np.array(g, dtype=np.int64)
        mask = np.all(arr @ gm == gm @ arr, axis=(1, 2))
        return [self.elements[i] for i in np.nonzero(mask)[0]]

    def conjugacy_classes(self):
        """List of (representative, class_size, centralizer_elements)."""
        if self._classes is not None:
            return self._classes
        assigned = set()
        classes = []
        for rep in self.elements:
            if rep in assigned:
                continue
            orbit = {rep}
            frontier = [rep]
            while frontier:
                nxt = []
                for x in frontier:
                    for s, s_inv in self._gen_inv_pairs():
                        y = freeze(mat_mul(mat_mul(s, x), s_inv))
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            assigned |= orbit
            cent = self.centralizer(rep)
            if len(cent) * len(orbit) != self.order:
                raise AssertionError("orbit-stabilizer mismatch in classes")
            classes.append((rep, len(orbit), cent))
        if sum(size for _, size, _ in classes) != self.order:
            raise AssertionError("conjugacy classes do not partition the group")
        self._classes = classes
        return classes

    def _gen_inv_pairs(self):
        pairs = []
        for s in self.generators:
            inv = _integer_inverse(s)
            pairs.append((s, inv))
        return pairs


def _integer_inverse(m):
    arr = np.array(m, dtype=np.int64)
    n = len(m)
    inv = np.rint(np.linalg.inv(arr.astype(float))).astype(np.int64)
    if not np.array_equal(arr @ inv, np.eye(n, dtype=np.int64)):
        raise ValueError("matrix is not unimodular")
    return freeze(inv.tolist())


def enumerate_group(source, order_cap=10**7):
    """Breadth-first closure of the generators into a WeylGroup.

    source may be a RootDatum or an iterable of integer matrices.  Refuses
    with GroupOrderCapError when the expected (or running) order exceeds the
    cap; W(E_8) is refused at the default cap.
    """
    if isinstance(source, RootDatum):
        expected = source.expected_order()
        if expected > order_cap:
            raise GroupOrderCapError(
                f"W({source.dynkin_type}) has order {expected}, "
                f"which exceeds the cap {order_cap}"
            )
        gens = [np.array(g, dtype=np.int64) for g in source.weyl_generators]
    else:
        gens = [np.array(g, dtype=np.int64) for g in source]
    r = gens[0].shape[0]
    seen = {}
    ident = np.eye(r, dtype=np.int64)
    seen[ident.tobytes()] = ident
    frontier = [ident]
    while frontier:
        block = np.stack(frontier)
        new = []
        for g in gens:
            prods = block @ g
            for p in prods:
                key = p.tobytes()
                if key not in seen:
                    seen[key] = p
                    new.append(p)
        if len(seen) > order_cap:
            raise GroupOrderCapError(
                f"group closure exceeded the cap {order_cap}"
            )
        frontier = new
    elements = [freeze(m.tolist()) for m in seen.values()]
    generators = [freeze(g.tolist()) for g in gens]
    return WeylGroup(elements, generators)


@dataclass(frozen=True)
class DiagramEmbedding:
    sub: RootDatum
    ambient: RootDatum
    node_map: tuple  # 1-based ambient node index for each sub node
    coroot_map: tuple  # ambient_rank x sub_rank integer matrix


def embed_diagram(sub_label, ambient_label, node_map):
    """Embedding of Dynkin diagrams given an explicit node correspondence.

    node_map[i] is the 1-based ambient node receiving sub node i+1.  The map
    must be injective and preserve the Cartan matrix (edges and arrows).
    """
    sub = (
        sub_label
        if isinstance(sub_label, RootDatum)
        else build_root_datum(sub_label)
    )
    ambient = (
        ambient_label
        if isinstance(ambient_label, RootDatum)
        else build_root_datum(ambient_label)
    )
    if isinstance(node_map, dict):
        node_map = [node_map[i] for i in sorted(node_map)]
    node_map = tuple(int(x) for x in node_map)
    if len(node_map) != sub.rank or len(set(node_map)) != sub.rank:
        raise ValueError("node_map must name one ambient node per sub node")
    if any(not 1 <= x <= ambient.rank for x in node_map):
        raise ValueError("node_map index out of range")
    for i in range(sub.rank):
        for j in range(sub.rank):
            a = sub.cartan[i][j]
            b = ambient.cartan[node_map[i] - 1][node_map[j] - 1]
            if a != b:
                raise ValueError(
                    f"node_map is not a diagram morphism: cartan[{i + 1}]"
                    f"[{j + 1}] = {a} but ambient has {b}"
                )
    cmap = [
        [1 if node_map[j] - 1 == i else 0 for j in range(sub.rank)]
        for i in range(ambient.rank)
    ]
    facs = invariant_factors(cmap)
    if any(f != 1 for f in facs):
        raise AssertionError("embedding cokernel has torsion")
    return DiagramEmbedding(
        sub=sub, ambient=ambient, node_map=node_map, coroot_map=freeze(cmap)
    )


def crepant_classification(type_label, rank=None):
    """Whether (A tensor Lambda)/W admits a crepant resolution for this type.

    Only the unitary (A_n) and symplectic (C_n) series do.
    """
    s = str(type_label).strip().upper().replace("_", "")
    letter = s[0]
    if len(s) > 1:
        rank = int(s[1:])
    if letter not in "ABCDEFG":
        raise ValueError(f"invalid Dynkin type {type_label}")
    if rank is not None:
        _validate_type(letter, rank)
    return "admits" if letter in ("A", "C") else "does_not_admit"
