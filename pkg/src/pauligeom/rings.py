"""Projective lines over small finite rings and their neighbour/distant graphs.

A pair ``(alpha, beta)`` is admissible when it is the first row of an
invertible 2x2 matrix over the ring; points of the line are admissible
pairs modulo left multiplication by units.  Two points are neighbours when
their representatives stack into a non-invertible matrix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import graphs as G
from .report import Report


class RingError(ValueError):
    pass


@dataclass
class FiniteRing:
    """Associative ring with unity given by operation tables over ``range(order)``."""

    name: str
    labels: tuple
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    # element -> 2x2 matrix over Z2, for matrix rings
    matrices: Optional[tuple] = None

    def __post_init__(self):
        self.add = np.asarray(self.add, dtype=np.int64)
        self.mul = np.asarray(self.mul, dtype=np.int64)
        self._validate()
        self._by_label = {lab: i for i, lab in enumerate(self.labels)}
        n = self.order
        self.neg = tuple(int(np.flatnonzero(self.add[a] == self.zero)[0]) for a in range(n))
        inv = {}
        for a in range(n):
            for b in range(n):
                if self.mul[a, b] == self.one and self.mul[b, a] == self.one:
                    inv[a] = b
        self.inverse = inv
        self.commutative = bool((self.mul == self.mul.T).all())

    @property
    def order(self) -> int:
        return len(self.labels)

    def _validate(self) -> None:
        n = len(self.labels)
        if n > 16:
            raise RingError("rings are limited to order 16")
        if self.add.shape != (n, n) or self.mul.shape != (n, n):
            raise RingError("operation tables have the wrong shape")
        A, M = self.add, self.mul
        r = np.arange(n)
        if not (A[self.zero] == r).all() or not (M[self.one] == r).all() or not (M[:, self.one] == r).all():
            raise RingError("identity elements do not act as identities")
        if not (A == A.T).all():
            raise RingError("addition is not commutative")
        if any(len(set(row)) != n for row in A.tolist()):
            raise RingError("addition is not a group operation")
        # associativity and both distributive laws, exhaustively
        for a in range(n):
            if not (A[A[a]] == A[a][A]).all():
                raise RingError("addition is not associative")
            if not (M[M[a]] == M[a][M]).all():
                raise RingError("multiplication is not associative")
            # a(b+c) = ab + ac ; (b+c)a = ba + ca
            if not (M[a][A] == A[np.ix_(M[a], M[a])]).all():
                raise RingError("left distributivity fails")
            if not (M[:, a][A] == A[np.ix_(M[:, a], M[:, a])]).all():
                raise RingError("right distributivity fails")

    def element(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            return int(label)
        return self._by_label[label]

    def is_unit(self, a: int) -> bool:
        return a in self.inverse

    @property
    def units(self) -> list:
        return sorted(self.inverse)

    @property
    def zero_divisors(self) -> list:
        """Non-units, zero included (in a finite ring every non-unit divides zero)."""
        return [a for a in range(self.order) if a not in self.inverse]

    def m(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def a(self, a: int, b: int) -> int:
        return int(self.add[a, b])


# --- built-in rings -------------------------------------------------------

def _tables(elements: Sequence, add, mul):
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    A = [[idx[add(x, y)] for y in elements] for x in elements]
    M = [[idx[mul(x, y)] for y in elements] for x in elements]
    return np.array(A).reshape(n, n), np.array(M).reshape(n, n)


def _z2_quotient(name: str, c0: int, c1: int, labels: Sequence[str]) -> FiniteRing:
    """Z2[x]/<x^2 + c1 x + c0>; element (u, v) stands for u + v x."""
    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]

    def mul(p, q):
        u0, u1 = p
        v0, v1 = q
        k0, k1, k2 = u0 * v0, u0 * v1 + u1 * v0, u1 * v1
        # x^2 = c1 x + c0 over Z2
        return ((k0 + k2 * c0) % 2, (k1 + k2 * c1) % 2)

    A, M = _tables(elements, lambda p, q: ((p[0] + q[0]) % 2, (p[1] + q[1]) % 2), mul)
    return FiniteRing(name, tuple(labels), A, M, zero=0, one=1)


# labelling of the sixteen 2x2 matrices over Z2; entry k is the matrix called k'
M2Z2_MATRICES = (
    ((0, 0), (0, 0)),
    ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (1, 1)), ((0, 0), (1, 1)),
    ((1, 0), (1, 0)), ((0, 1), (0, 1)), ((1, 1), (0, 0)), ((0, 1), (0, 0)),
    ((1, 1), (0, 1)), ((0, 0), (1, 0)), ((1, 0), (1, 1)), ((0, 1), (1, 1)),
    ((1, 1), (1, 0)), ((0, 0), (0, 1)), ((1, 0), (0, 0)),
)


def _m2z2() -> FiniteRing:
    elements = [np.array(m) for m in M2Z2_MATRICES]
    key = [tuple(map(tuple, m)) for m in M2Z2_MATRICES]
    idx = {k: i for i, k in enumerate(key)}
    A = [[idx[tuple(map(tuple, (x + y) % 2))] for y in elements] for x in elements]
    M = [[idx[tuple(map(tuple, (x @ y) % 2))] for y in elements] for x in elements]
    labels = tuple(f"{k}'" for k in range(16))
    return FiniteRing("M2Z2", labels, np.array(A), np.array(M), zero=0, one=1, matrices=M2Z2_MATRICES)


def builtin_ring(name: str) -> FiniteRing:
    """One of ``Z2``, ``F4``, ``Z2x_sq`` (Z2[x]/<x^2>), ``Z2xZ2``, ``M2Z2``."""
    if name == "Z2":
        A = np.array([[0, 1], [1, 0]])
        M = np.array([[0, 0], [0, 1]])
        return FiniteRing("Z2", ("0", "1"), A, M, zero=0, one=1)
    if name == "F4":
        return _z2_quotient("F4", 1, 1, ("0", "1", "x", "x+1"))
    if name == "Z2x_sq":
        return _z2_quotient("Z2x_sq", 0, 0, ("0", "1", "x", "x+1"))
    if name == "Z2xZ2":
        elements = [(0, 0), (1, 1), (1, 0), (0, 1)]
        A, M = _tables(elements, lambda p, q: ((p[0] + q[0]) % 2, (p[1] + q[1]) % 2),
                       lambda p, q: (p[0] * q[0], p[1] * q[1]))
        return FiniteRing("Z2xZ2", ("(0,0)", "(1,1)", "(1,0)", "(0,1)"), A, M, zero=0, one=1)
    if name == "M2Z2":
        return _m2z2()
    raise KeyError(f"unknown ring {name!r}")


# --- 2x2 invertibility ----------------------------------------------------

def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of a matrix whose rows are bit masks."""
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        pivot = max(rows)
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows if r != pivot]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def _flatten(ring: FiniteRing, a: int, b: int, c: int, d: int) -> list:
    mats = ring.matrices
    out = []
    for left, right in ((a, b), (c, d)):
        for i in range(2):
            bits = list(mats[left][i]) + list(mats[right][i])
            out.append(int("".join(map(str, bits)), 2))
    return out


def is_invertible(ring: FiniteRing, a: int, b: int, c: int, d: int) -> bool:
    """Whether ``[[a, b], [c, d]]`` lies in GL_2 of the ring."""
    if ring.matrices is not None:
        return gf2_rank(_flatten(ring, a, b, c, d)) == 4
    if ring.commutative:
        det = ring.a(ring.m(a, d), ring.neg[ring.m(b, c)])
        return ring.is_unit(det)
    return invertible_by_search(ring, a, b, c, d)


def _matmul2(ring: FiniteRing, X, Y):
    m, s = ring.m, ring.a
    return (
        s(m(X[0], Y[0]), m(X[1], Y[2])), s(m(X[0], Y[1]), m(X[1], Y[3])),
        s(m(X[2], Y[0]), m(X[3], Y[2])), s(m(X[2], Y[1]), m(X[3], Y[3])),
    )


def invertible_by_search(ring: FiniteRing, a: int, b: int, c: int, d: int) -> bool:
    """Exhaustive search for a two-sided inverse (independent of any determinant)."""
    X = (a, b, c, d)
    eye = (ring.one, ring.zero, ring.zero, ring.one)
    m, s, n = ring.m, ring.a, ring.order
    # columns of a right inverse solve X (u, v)^T = e_1 and e_2 separately
    cols = []
    for top, bottom in ((ring.one, ring.zero), (ring.zero, ring.one)):
        cols.append([(u, v) for u in range(n) for v in range(n)
                     if s(m(a, u), m(b, v)) == top and s(m(c, u), m(d, v)) == bottom])
    for (y0, y2), (y1, y3) in itertools.product(*cols):
        if _matmul2(ring, (y0, y1, y2, y3), X) == eye:
            return True
    return False


# --- projective line ------------------------------------------------------

@dataclass
class RingLinePoint:
    rep: tuple  # canonical admissible pair
    cls: int
    members: frozenset = field(repr=False, default=frozenset())


@dataclass
class RingLine:
    ring: FiniteRing
    points: list
    neighbor: tuple  # bit masks

    def __post_init__(self):
        self._locate = {pair: pt.cls for pt in self.points for pair in pt.members}

    def __len__(self) -> int:
        return len(self.points)

    def label(self, i: int) -> str:
        a, b = self.points[i].rep
        return f"({self.ring.labels[a]},{self.ring.labels[b]})"

    @property
    def labels(self) -> list:
        return [self.label(i) for i in range(len(self.points))]

    def locate(self, pair) -> int:
        """Index of the point containing the admissible pair ``pair`` (labels or elements)."""
        a, b = (self.ring.element(x) for x in pair)
        return self._locate[(a, b)]

    def is_neighbor(self, i: int, j: int) -> bool:
        return bool(self.neighbor[i] >> j & 1)

    def is_distant(self, i: int, j: int) -> bool:
        return i != j and not self.is_neighbor(i, j)

    def neighbor_graph(self, subset: Optional[Sequence[int]] = None) -> G.LabeledGraph:
        g = G.LabeledGraph(self.neighbor, self.labels)
        return g if subset is None else G.induced_subgraph(g, subset)

    def distant_graph(self, subset: Optional[Sequence[int]] = None) -> G.LabeledGraph:
        g = G.complement(G.LabeledGraph(self.neighbor, self.labels))
        return g if subset is None else G.induced_subgraph(g, subset)


def admissible_pairs(ring: FiniteRing) -> list:
    n = ring.order
    out = []
    for a, b in itertools.product(range(n), repeat=2):
        if any(is_invertible(ring, a, b, c, d) for c, d in itertools.product(range(n), repeat=2)):
            out.append((a, b))
    return out


def _representative(ring: FiniteRing, orbit: set) -> tuple:
    # unit entries are normalized to 1 as in the usual listing; otherwise lexicographically least
    for a, b in orbit:
        if a == ring.one:
            return (a, b)
    for a, b in orbit:
        if b == ring.one:
            return (a, b)
    return min(orbit)


def _point_key(ring: FiniteRing, rep: tuple):
    a, b = rep
    category = 0 if a == ring.one else (1 if b == ring.one else 2)
    return (category, rep)


def projective_line(ring: FiniteRing, shuffle_seed: Optional[int] = None) -> RingLine:
    """Points and neighbour relation of the projective line over ``ring``.

    ``shuffle_seed`` picks random class members to test the neighbour relation
    (it must not depend on the representatives).
    """
    pairs = admissible_pairs(ring)
    units = ring.units
    seen: set = set()
    orbits = []
    for pair in pairs:
        if pair in seen:
            continue
        orbit = {(ring.m(u, pair[0]), ring.m(u, pair[1])) for u in units}
        seen |= orbit
        orbits.append(orbit)
    reps = [_representative(ring, o) for o in orbits]
    order = sorted(range(len(orbits)), key=lambda k: _point_key(ring, reps[k]))
    points = [RingLinePoint(reps[k], i, frozenset(orbits[k])) for i, k in enumerate(order)]
    if shuffle_seed is not None:
        rng = np.random.default_rng(shuffle_seed)
        use = [sorted(pt.members)[rng.integers(len(pt.members))] for pt in points]
    else:
        use = [pt.rep for pt in points]
    nbr = [0] * len(points)
    for i, j in itertools.combinations(range(len(points)), 2):
        (a, b), (c, d) = use[i], use[j]
        if not is_invertible(ring, a, b, c, d):
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
    return RingLine(ring, points, tuple(nbr))


def pair_symmetric_subsets(line: RingLine, U0, V0) -> tuple:
    """Points distant from both ``U0`` and ``V0``, and points neighbour to both."""
    u, v = line.locate(U0), line.locate(V0)
    if not line.is_distant(u, v):
        raise ValueError("U0 and V0 must be distinct and mutually distant")
    both_distant, both_neighbor = [], []
    for x in range(len(line)):
        if x in (u, v):
            continue
        if line.is_distant(x, u) and line.is_distant(x, v):
            both_distant.append(x)
        elif line.is_neighbor(x, u) and line.is_neighbor(x, v):
            both_neighbor.append(x)
    return both_distant, both_neighbor


# --- correspondence with the two-qubit Pauli graph ------------------------

def _iso(rep: Report, clause: str, g1, g2) -> None:
    m = G.find_isomorphism(g1, g2)
    rep.check(clause, m is not None and G.check_isomorphism(g1, g2, m))


def hyperplane_correspondence(line: RingLine, bundle) -> Report:
    """Match a ring line with the matching distinguished subset of the two-qubit Pauli graph."""
    from .geometry import MERMIN_SQUARE, TWO_QUBIT_OVOID, BIPARTITE_PART

    if (bundle.params.p, bundle.params.n) != (2, 2):
        raise ValueError("the correspondence is with the two-qubit Pauli graph")
    name = line.ring.name
    rep = Report(f"ring line over {name}")
    pg = bundle.graph
    if name == "F4":
        ov = G.induced_subgraph(pg, bundle.vertices(TWO_QUBIT_OVOID))
        rep.check("points", expected=5, measured=len(line))
        rep.check("neighbour graph is a 5-coclique", line.neighbor_graph().edge_count == 0)
        rep.check("ovoid is a 5-coclique", ov.v == 5 and ov.edge_count == 0)
        _iso(rep, "neighbour graph matches the ovoid", line.neighbor_graph(), ov)
    elif name == "Z2x_sq":
        ref = bundle.vertex("a")
        perp = G.induced_subgraph(pg, pg.neighbors(ref))
        rep.check("points", expected=6, measured=len(line))
        rep.check("operators commuting with a given one", expected=6, measured=perp.v)
        _iso(rep, "neighbour graph matches the perp-set minus its reference", line.neighbor_graph(), perp)
    elif name == "Z2xZ2":
        ms = G.induced_subgraph(pg, bundle.vertices(MERMIN_SQUARE))
        rep.check("points", expected=9, measured=len(line))
        rep.check("distant graph spectrum", expected={-2: 4, 1: 4, 4: 1},
                  measured=dict(G.spectrum(line.distant_graph())))
        _iso(rep, "distant graph matches the Mermin square", line.distant_graph(), ms)
    elif name == "M2Z2":
        dist, nbr = pair_symmetric_subsets(line, ("1'", "0'"), ("0'", "1'"))
        rep.check("points", expected=35, measured=len(line))
        rep.check("points distant from U0 and V0", expected=6, measured=len(dist))
        rep.check("points neighbour to U0 and V0", expected=9, measured=len(nbr))
        r = line.ring
        rep.check("distant-to-both points have unit entries",
                  all(r.is_unit(a) and r.is_unit(b) for a, b in (line.points[x].rep for x in dist)))
        rep.check("neighbour-to-both points have zero-divisor entries",
                  all(not r.is_unit(a) and not r.is_unit(b) for a, b in (line.points[x].rep for x in nbr)))
        _iso(rep, "distant graph of the 9 points matches the Mermin square",
             line.distant_graph(nbr), G.induced_subgraph(pg, bundle.vertices(MERMIN_SQUARE)))
        _iso(rep, "neighbour graph of the 6 points matches K[3,3]",
             line.neighbor_graph(dist), G.induced_subgraph(pg, bundle.vertices(BIPARTITE_PART)))
        _iso(rep, "neighbour graph of all 15 points matches the Pauli graph", line.neighbor_graph(dist + nbr), pg)
    else:
        raise ValueError(f"no Pauli-graph counterpart for the line over {name}")
    return rep
