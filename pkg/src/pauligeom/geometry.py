"""Pauli graphs as point-line geometries.

Points are the nonidentity Pauli operators, lines their maximal commuting
subsets.  For two qubits this is the generalized quadrangle W(2); for two
qutrits the line-intersection (dual) graph has the parameters of Q(4,3).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import graphs as G
from .report import Report
from .pauli import (
    PauliOperator,
    SymplecticIndex,
    SystemParams,
    common_eigenbasis,
    commutes,
    equal_up_to_phase,
    local_factors,
    make_operator,
    multiply,
    schmidt_rank,
)

# single-qudit operators in labelling order (identity first)
QUBIT_ORDER = [(0, 0), (1, 0), (1, 1), (0, 1)]  # I, x, y, z
QUTRIT_ORDER = [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (0, 2), (2, 0), (2, 2), (2, 1)]  # I, Z, X, Y, V, Z2, X2, Y2, V2

# The forty maximal commuting subsets of two qutrits, named as in the literature.
QUTRIT_MCS = {
    "L1": "1 5 a 9 13 e 41 45", "L2": "2 6 a 10 14 e 42 46",
    "L3": "3 7 a 11 15 e 43 47", "L4": "4 8 a 12 16 e 44 48",
    "M1": "1 5 b 17 21 f 49 53", "M2": "2 6 b 18 22 f 50 54",
    "M3": "3 7 b 19 23 f 51 55", "M4": "4 8 b 20 24 f 52 56",
    "N1": "1 5 c 25 29 g 57 61", "N2": "2 6 c 26 30 g 58 62",
    "N3": "3 7 c 27 31 g 59 63", "N4": "4 8 c 28 32 g 60 64",
    "P1": "1 5 d 33 37 h 65 69", "P2": "2 6 d 34 38 h 66 70",
    "P3": "3 7 d 35 39 h 67 71", "P4": "4 8 d 36 40 h 68 72",
    "X1": "9 22 32 39 45 50 60 67", "X2": "10 17 27 40 46 53 63 68",
    "X3": "11 20 30 33 47 56 58 69", "X4": "12 23 25 34 48 51 61 70",
    "X5": "13 18 28 35 41 54 64 71", "X6": "14 21 31 36 42 49 59 72",
    "X7": "15 24 26 37 43 52 62 65", "X8": "16 19 29 38 44 55 57 66",
    "Y1": "9 23 30 40 45 51 58 68", "Y2": "10 19 32 33 46 55 60 69",
    "Y3": "11 22 25 36 47 50 61 72", "Y4": "12 17 26 39 48 53 62 67",
    "Y5": "13 20 27 34 41 56 63 70", "Y6": "14 23 28 37 42 51 64 65",
    "Y7": "15 18 29 40 43 54 57 68", "Y8": "16 21 30 35 44 49 58 71",
    "Z1": "9 24 31 38 45 52 59 66", "Z2": "10 24 25 35 46 52 61 71",
    "Z3": "11 17 28 38 47 53 64 66", "Z4": "12 18 31 33 48 54 59 69",
    "Z5": "13 19 26 36 41 55 62 72", "Z6": "14 20 29 39 42 56 57 67",
    "Z7": "15 21 32 34 43 49 60 70", "Z8": "16 22 27 37 44 50 63 65",
}

QUTRIT_OVOID = ("L1", "M2", "N3", "P4", "X3", "X8", "Y4", "Y6", "Z2", "Z7")

# two-qubit subsets used by the partitions
FANO_PENCIL = ("1", "2", "3", "a", "4", "5", "6")
MERMIN_SQUARE = ("4", "5", "6", "7", "8", "9", "10", "11", "12")
BIPARTITE_PART = ("1", "2", "3", "a", "b", "c")
TWO_QUBIT_OVOID = ("1", "2", "6", "9", "12")


def single_qudit_order(p: int) -> list:
    if p == 2:
        return list(QUBIT_ORDER)
    if p == 3:
        return list(QUTRIT_ORDER)
    out = [(0, 0)]
    for e in range(1, p):
        for a, b in [(0, 1)] + [(1, k) for k in range(p)]:
            out.append(((e * a) % p, (e * b) % p))
    return out


def _label(params: SystemParams, idx: SymplecticIndex, positions: Sequence[int]) -> str:
    if params.n == 2 and params.p in (2, 3):
        k, j = positions
        m = params.p ** 2 - 1
        if k == 0:
            return str(j)
        if j == 0:
            return "abcdefgh"[k - 1]
        return str(m * k + j)
    return "".join(map(str, idx.a)) + "|" + "".join(map(str, idx.b))


@dataclass
class PauliGraphBundle:
    """The Pauli graph of a register together with its operators."""

    params: SystemParams
    graph: G.LabeledGraph
    indices: list
    operators: list

    @property
    def labels(self) -> tuple:
        return self.graph.labels

    def vertex(self, label) -> int:
        return self.graph.index(str(label))

    def vertices(self, labels: Iterable) -> list:
        return [self.vertex(lab) for lab in labels]

    def operator(self, label) -> PauliOperator:
        return self.operators[self.vertex(label)]

    def index_of(self, label) -> SymplecticIndex:
        return self.indices[self.vertex(label)]

    def label_of_index(self, idx: SymplecticIndex) -> str:
        return self.labels[self._by_index[idx]]

    def __post_init__(self):
        self._by_index = {idx: i for i, idx in enumerate(self.indices)}


def _sympl_matrix(indices: Sequence[SymplecticIndex], p: int) -> np.ndarray:
    A = np.array([idx.a for idx in indices], dtype=np.int64)
    B = np.array([idx.b for idx in indices], dtype=np.int64)
    return (A @ B.T - B @ A.T) % p


def build_pauli_graph(params: SystemParams, check: str = "sample", max_vertices: int = 4096,
                      seed: int = 0) -> PauliGraphBundle:
    """Commutation graph on the ``d**2 - 1`` nonidentity operators.

    ``check`` selects how adjacency is cross-checked against monomial
    multiplication: ``"full"`` (every pair), ``"sample"`` or ``"none"``.
    """
    m = params.d ** 2 - 1
    if m > max_vertices:
        raise ValueError(f"{m} vertices exceeds the supported size {max_vertices}")
    order = single_qudit_order(params.p)
    indices, labels = [], []
    for positions in itertools.product(range(len(order)), repeat=params.n):
        if not any(positions):
            continue
        idx = SymplecticIndex(tuple(order[k][0] for k in positions), tuple(order[k][1] for k in positions))
        indices.append(idx)
        labels.append(_label(params, idx, positions))
    form = _sympl_matrix(indices, params.p)
    commuting = form == 0
    np.fill_diagonal(commuting, False)
    graph = G.LabeledGraph([G.to_mask(np.flatnonzero(row)) for row in commuting], labels)
    operators = [make_operator(params, idx) for idx in indices]
    bundle = PauliGraphBundle(params, graph, indices, operators)
    if check == "full":
        pairs: Iterable = itertools.combinations(range(m), 2)
    elif check == "sample":
        rng = random.Random(seed)
        pairs = [tuple(rng.sample(range(m), 2)) for _ in range(min(500, m * (m - 1) // 2))]
    elif check == "none":
        pairs = []
    else:
        raise ValueError(f"unknown check mode {check!r}")
    for i, j in pairs:
        if graph.has_edge(i, j) != commutes(operators[i], operators[j]):
            raise AssertionError(f"adjacency of {labels[i]}, {labels[j]} disagrees with operator commutation")
    return bundle


# --- incidence structures -------------------------------------------------

@dataclass
class IncidenceStructure:
    """Points with lines given as sorted tuples of point indices."""

    points: tuple
    lines: tuple
    line_names: tuple = ()

    def __post_init__(self):
        self.lines = tuple(tuple(sorted(line)) for line in self.lines)
        if not self.line_names:
            self.line_names = tuple(f"l{k}" for k in range(len(self.lines)))
        self._point_index = {p: i for i, p in enumerate(self.points)}
        self._line_index = {name: k for k, name in enumerate(self.line_names)}
        through: list = [[] for _ in self.points]
        for k, line in enumerate(self.lines):
            for pt in line:
                through[pt].append(k)
        self.through = tuple(tuple(t) for t in through)
        self.line_masks = tuple(G.to_mask(line) for line in self.lines)

    def point(self, label) -> int:
        return self._point_index[str(label)]

    def line(self, name: str) -> int:
        return self._line_index[name]

    def collinearity_graph(self) -> G.LabeledGraph:
        adj = [0] * len(self.points)
        for mask in self.line_masks:
            for pt in G.bits(mask):
                adj[pt] |= mask & ~(1 << pt)
        return G.LabeledGraph(adj, [str(p) for p in self.points])

    def line_points(self, k: int) -> list:
        return [self.points[i] for i in self.lines[k]]


def enumerate_mcs(bundle: PauliGraphBundle) -> IncidenceStructure:
    """Maximal commuting subsets (cliques of size d - 1) as lines."""
    d = bundle.params.d
    cliques = G.max_cliques(bundle.graph, size=d - 1)
    names: tuple = ()
    if (bundle.params.p, bundle.params.n) == (3, 2):
        by_set = {frozenset(bundle.vertices(v.split())): k for k, v in QUTRIT_MCS.items()}
        names_list = [by_set.get(frozenset(c)) for c in cliques]
        if None not in names_list:
            order = sorted(range(len(cliques)), key=lambda k: list(QUTRIT_MCS).index(names_list[k]))
            cliques = [cliques[k] for k in order]
            names = tuple(names_list[k] for k in order)
    if not names:
        names = tuple("-".join(bundle.labels[v] for v in c) for c in cliques)
    return IncidenceStructure(bundle.labels, tuple(cliques), names)


def dual_graph(structure: IncidenceStructure) -> G.LabeledGraph:
    """Lines as vertices, adjacent when they share a point."""
    masks = structure.line_masks
    adj = []
    for k, mk in enumerate(masks):
        adj.append(G.to_mask(j for j, mj in enumerate(masks) if j != k and mk & mj))
    return G.LabeledGraph(adj, structure.line_names)


def dual_structure(structure: IncidenceStructure) -> IncidenceStructure:
    """Lines become points; each distinct pencil of lines through a point becomes a line.

    A dual line is named by the points sharing that pencil, e.g. ``"1|5"``.
    """
    pencils: dict = {}
    for pt, through in enumerate(structure.through):
        if through:
            pencils.setdefault(through, []).append(structure.points[pt])
    keys = sorted(pencils)
    names = tuple("|".join(map(str, pencils[k])) for k in keys)
    return IncidenceStructure(structure.line_names, tuple(keys), names)


# --- hyperplanes ----------------------------------------------------------

@dataclass
class HyperplaneClassification:
    kind: str  # perp_set | grid | ovoid | other_hyperplane | not_hyperplane
    reference: Optional[str] = None
    grid_shape: Optional[tuple] = None
    profile: dict = field(default_factory=dict)  # intersection size -> number of lines

    @property
    def is_hyperplane(self) -> bool:
        return self.kind != "not_hyperplane"


def perp_set(structure: IncidenceStructure, point) -> set:
    """The point together with every point collinear with it."""
    x = structure.point(point) if not isinstance(point, int) else point
    if not 0 <= x < len(structure.points):
        raise KeyError(point)
    mask = 1 << x
    for k in structure.through[x]:
        mask |= structure.line_masks[k]
    return set(G.bits(mask))


def _grid_shape(structure: IncidenceStructure, mask: int) -> Optional[tuple]:
    inside = [k for k, lm in enumerate(structure.line_masks) if lm & mask == lm]
    if not inside:
        return None
    # two parallel classes: lines in a class are disjoint, across classes meet once
    first = inside[0]
    rows = [k for k in inside if not structure.line_masks[k] & structure.line_masks[first] or k == first]
    cols = [k for k in inside if k not in rows]
    lm = structure.line_masks
    for a, b in itertools.combinations(rows, 2):
        if lm[a] & lm[b]:
            return None
    for a, b in itertools.combinations(cols, 2):
        if lm[a] & lm[b]:
            return None
    for a in rows:
        for b in cols:
            if G.popcount(lm[a] & lm[b]) != 1:
                return None
    cover_r = 0
    for a in rows:
        cover_r |= lm[a]
    cover_c = 0
    for b in cols:
        cover_c |= lm[b]
    if cover_r != mask or cover_c != mask or not cols:
        return None
    return (len(rows), len(cols))


def classify_hyperplane(structure: IncidenceStructure, subset: Iterable) -> HyperplaneClassification:
    pts = [p if isinstance(p, int) else structure.point(p) for p in subset]
    mask = G.to_mask(pts)
    profile: dict = {}
    hyper = True
    for lm in structure.line_masks:
        c = G.popcount(lm & mask)
        profile[c] = profile.get(c, 0) + 1
        if c != 1 and c != G.popcount(lm):
            hyper = False
    profile = dict(sorted(profile.items()))
    if mask == (1 << len(structure.points)) - 1:
        hyper = False  # hyperplanes are proper subsets
    if not hyper:
        return HyperplaneClassification("not_hyperplane", profile=profile)
    if set(profile) == {1}:
        return HyperplaneClassification("ovoid", profile=profile)
    for x in sorted(pts):
        if G.to_mask(perp_set(structure, x)) == mask:
            return HyperplaneClassification("perp_set", reference=str(structure.points[x]), profile=profile)
    shape = _grid_shape(structure, mask)
    if shape is not None:
        return HyperplaneClassification("grid", grid_shape=shape, profile=profile)
    return HyperplaneClassification("other_hyperplane", profile=profile)


def all_hyperplanes(structure: IncidenceStructure) -> list:
    """Every geometric hyperplane, by brute force over point subsets (small structures only)."""
    n = len(structure.points)
    if n > 20:
        raise ValueError("brute-force hyperplane enumeration is limited to 20 points")
    out = []
    for mask in range(1, (1 << n) - 1):
        if all(G.popcount(lm & mask) in (1, G.popcount(lm)) for lm in structure.line_masks):
            out.append(tuple(G.bits(mask)))
    return out


# --- spreads --------------------------------------------------------------

def exact_covers(universe: Iterable, subsets: dict, limit: Optional[int] = None) -> list:
    """All ways to partition ``universe`` with members of ``subsets`` (Algorithm X).

    ``subsets`` maps a key to an iterable of elements; solutions are sorted key tuples.
    """
    X = {e: set() for e in universe}
    Y = {key: list(elems) for key, elems in subsets.items()}
    for key, elems in Y.items():
        for e in elems:
            if e not in X:
                break
        else:
            for e in elems:
                X[e].add(key)
            continue
        raise ValueError(f"subset {key!r} leaves the universe")
    solutions: list = []
    partial: list = []

    def select(key):
        cols = []
        for j in Y[key]:
            for i in X[j]:
                for k in Y[i]:
                    if k != j:
                        X[k].remove(i)
            cols.append(X.pop(j))
        return cols

    def deselect(key, cols):
        for j in reversed(Y[key]):
            X[j] = cols.pop()
            for i in X[j]:
                for k in Y[i]:
                    if k != j:
                        X[k].add(i)

    def search() -> bool:
        if not X:
            solutions.append(tuple(sorted(partial)))
            return limit is not None and len(solutions) >= limit
        col = min(X, key=lambda c: (len(X[c]), c))
        for key in sorted(X[col]):
            partial.append(key)
            cols = select(key)
            stop = search()
            deselect(key, cols)
            partial.pop()
            if stop:
                return True
        return False

    search()
    return sorted(solutions)


def find_spreads(structure: IncidenceStructure, limit: Optional[int] = None) -> list:
    """Sets of pairwise disjoint lines covering every point, as sorted line-index tuples."""
    return exact_covers(range(len(structure.points)), dict(enumerate(structure.lines)), limit)


def line_bases(bundle: PauliGraphBundle, lines: Sequence[Sequence[int]]) -> list:
    return [common_eigenbasis([bundle.operators[v] for v in line]) for line in lines]


def mub_deviation(bundle: PauliGraphBundle, lines: Sequence[Sequence[int]]) -> float:
    """Largest ``| |<e|f>|^2 - 1/d |`` over vectors of different listed bases."""
    d = bundle.params.d
    bases = line_bases(bundle, lines)
    worst = 0.0
    for b1, b2 in itertools.combinations(bases, 2):
        overlaps = np.abs(b1.conj().T @ b2) ** 2
        worst = max(worst, float(np.max(np.abs(overlaps - 1.0 / d))))
    return worst


# --- Mermin square --------------------------------------------------------

class NotAGridError(ValueError):
    pass


def mermin_arrangement(structure: IncidenceStructure, points: Iterable) -> list:
    """Lexicographically least square array whose rows and columns are lines."""
    pts = sorted({p if isinstance(p, int) else structure.point(p) for p in points})
    k = math.isqrt(len(pts))
    if k * k != len(pts) or k < 2:
        raise NotAGridError(f"{len(pts)} points cannot form a square array")
    lines = {frozenset(line) for line in structure.lines if len(line) == k}
    cells = [-1] * (k * k)
    used: set = set()

    def ok(pos: int) -> bool:
        r, c = divmod(pos, k)
        if c == k - 1 and frozenset(cells[r * k:(r + 1) * k]) not in lines:
            return False
        if r == k - 1 and frozenset(cells[c::k]) not in lines:
            return False
        # partial rows/columns must stay inside some line
        row = cells[r * k:r * k + c + 1]
        col = cells[c:pos + 1:k]
        return any(set(row) <= ln for ln in lines) and any(set(col) <= ln for ln in lines)

    def fill(pos: int) -> bool:
        if pos == k * k:
            return True
        for pt in pts:
            if pt in used:
                continue
            cells[pos] = pt
            if ok(pos):
                used.add(pt)
                if fill(pos + 1):
                    return True
                used.discard(pt)
            cells[pos] = -1
        return False

    if not fill(0):
        raise NotAGridError("points do not carry a grid of lines")
    return [[str(structure.points[cells[r * k + c]]) for c in range(k)] for r in range(k)]


@dataclass
class Polarization:
    rows: tuple
    columns: tuple
    modulus: int

    @property
    def total(self) -> int:
        return (sum(self.rows) + sum(self.columns)) % self.modulus

    @property
    def contextual(self) -> bool:
        """True when all products together give -1: no noncontextual +-1 assignment exists."""
        return 2 * self.total == self.modulus


def _triple_phase(bundle: PauliGraphBundle, labels: Sequence) -> int:
    ops = [bundle.operator(lab) for lab in labels]
    for A, B in itertools.combinations(ops, 2):
        if not commutes(A, B):
            raise ValueError(f"operators {labels} do not commute")
    prod = ops[0]
    for op in ops[1:]:
        prod = multiply(prod, op)
    k = equal_up_to_phase(prod, PauliOperator.identity(prod.dim, prod.modulus))
    if k is None:
        raise ValueError(f"product of {list(labels)} is not a multiple of the identity")
    return k


def verify_polarization(bundle: PauliGraphBundle, arrangement: Sequence[Sequence]) -> Polarization:
    """Exact phases of row and column products of a square array of operators."""
    flat = [str(x) for row in arrangement for x in row]
    if len(set(flat)) != len(flat):
        raise ValueError("arrangement repeats an operator")
    rows = tuple(_triple_phase(bundle, row) for row in arrangement)
    cols = tuple(_triple_phase(bundle, col) for col in zip(*arrangement))
    return Polarization(rows, cols, bundle.params.modulus)


# --- entanglement ---------------------------------------------------------

def _check_mcs(bundle: PauliGraphBundle, line: Sequence[int]) -> None:
    d = bundle.params.d
    if len(set(line)) != d - 1 or not G.is_clique(bundle.graph, line):
        raise ValueError("not a maximal commuting subset")


def line_entanglement(bundle: PauliGraphBundle, line: Sequence[int]) -> str:
    """``"unentangled"`` iff on every qudit the local factors of the line pairwise commute."""
    _check_mcs(bundle, line)
    params = bundle.params
    factors = [local_factors(params, bundle.indices[v]) for v in line]
    for q in range(params.n):
        for f1, f2 in itertools.combinations([f[q] for f in factors], 2):
            if not commutes(f1, f2):
                return "entangled"
    return "unentangled"


def line_schmidt_ranks(bundle: PauliGraphBundle, line: Sequence[int]) -> list:
    _check_mcs(bundle, line)
    if bundle.params.n != 2:
        raise ValueError("Schmidt ranks are defined here for two qudits")
    basis = common_eigenbasis([bundle.operators[v] for v in line])
    return [schmidt_rank(basis[:, k], bundle.params.p) for k in range(basis.shape[1])]


def closes_under_product(bundle: PauliGraphBundle, line: Sequence[int]) -> bool:
    """Products of two operators on the line stay on the line (up to phase) or give the identity."""
    ops = [bundle.operators[v] for v in line]
    ident = PauliOperator.identity(ops[0].dim, ops[0].modulus)
    for A, B in itertools.product(ops, repeat=2):
        prod = multiply(A, B)
        if equal_up_to_phase(prod, ident) is not None:
            continue
        if not any(equal_up_to_phase(prod, C) is not None for C in ops):
            return False
    return True


def product_label(bundle: PauliGraphBundle, u, v) -> tuple:
    """Label and phase exponent of the product of operators ``u`` and ``v``."""
    iu, iv = bundle.indices[bundle.vertex(u)], bundle.indices[bundle.vertex(v)]
    s = iu.add(iv, bundle.params.p)
    prod = multiply(bundle.operator(u), bundle.operator(v))
    if s.is_zero():
        return None, equal_up_to_phase(prod, PauliOperator.identity(prod.dim, prod.modulus))
    lab = bundle.label_of_index(s)
    return lab, equal_up_to_phase(prod, bundle.operator(lab))


# --- named partitions -----------------------------------------------------

class PartitionNotApplicable(ValueError):
    pass


class PartitionReport(Report):
    """Report whose third ``check`` argument is free-form measured detail."""

    def check(self, clause: str, ok: bool, detail=None) -> bool:
        return super().check(clause, bool(ok), measured=detail)


def _maps_into(bundle, edges_of, targets, report, clause):
    targets = set(targets)
    images = {}
    for u, v in edges_of:
        lab, _ = product_label(bundle, bundle.labels[u], bundle.labels[v])
        images[(bundle.labels[u], bundle.labels[v])] = lab
    bad = [e for e, lab in images.items() if lab not in targets]
    report.check(clause, not bad, bad or None)
    return images


def _line_product_closure(bundle, structure, part, report, clause):
    mask = G.to_mask(bundle.vertices(part))
    inside = [ln for ln, lm in zip(structure.lines, structure.line_masks) if lm & mask == lm]
    ok = bool(inside)
    for line in inside:
        for u, v in itertools.combinations(line, 2):
            lab, _ = product_label(bundle, bundle.labels[u], bundle.labels[v])
            third = set(line) - {u, v}
            ok &= lab is not None and bundle.vertex(lab) in third
    report.check(clause, ok, len(inside))


def _iso_check(report, clause, g, model):
    m = G.find_isomorphism(g, model)
    ok = m is not None and G.check_isomorphism(g, model, m)
    report.check(clause, ok)
    if ok:
        report.witness[clause] = {g.labels[i]: model.labels[j] for i, j in m.items()}


def _two_qubit(bundle, name):
    if (bundle.params.p, bundle.params.n) != (2, 2):
        raise PartitionNotApplicable(f"{name} applies to two qubits only")


def _two_qutrit(bundle, name):
    if (bundle.params.p, bundle.params.n) != (3, 2):
        raise PartitionNotApplicable(f"{name} applies to two qutrits only")


def _rest(bundle, part):
    part = set(part)
    return [lab for lab in bundle.labels if lab not in part]


def verify_partition(bundle: PauliGraphBundle, name: str, **options) -> PartitionReport:
    """Construct a named partition and check each of its structural claims.

    Two-qubit: ``FP_CB``, ``BP_MS``, ``I_PG``.  Two-qutrit (on the dual
    graph): ``QUTRIT_GRID``, ``QUTRIT_OVOID``, ``QUTRIT_PERP``.
    """
    handlers = {
        "FP_CB": _fp_cb, "BP_MS": _bp_ms, "I_PG": _i_pg,
        "QUTRIT_GRID": _qutrit_grid, "QUTRIT_OVOID": _qutrit_ovoid, "QUTRIT_PERP": _qutrit_perp,
    }
    if name not in handlers:
        raise KeyError(f"unknown partition {name!r}")
    return handlers[name](bundle, **options)


def _fp_cb(bundle):
    _two_qubit(bundle, "FP_CB")
    rep = PartitionReport(name="FP_CB")
    st = enumerate_mcs(bundle)
    fp, cb = FANO_PENCIL, _rest(bundle, FANO_PENCIL)
    cls = classify_hyperplane(st, fp)
    rep.check("FP is a perp-set", cls.kind == "perp_set", cls.reference)
    rep.check("FP reference point is a", cls.reference == "a", cls.reference)
    _line_product_closure(bundle, st, fp, rep, "two operators on an FP line give the third")
    sub = G.induced_subgraph(bundle.graph, bundle.vertices(cb))
    _iso_check(rep, "CB is a 3-cube", sub, G.hypercube(3))
    rep.witness["edge map"] = _maps_into(bundle, [(bundle.vertex(sub.labels[i]), bundle.vertex(sub.labels[j]))
                                                  for i, j in sub.edges()], fp, rep, "CB edges map to FP vertices")
    return rep


def _bp_ms(bundle):
    _two_qubit(bundle, "BP_MS")
    rep = PartitionReport(name="BP_MS")
    st = enumerate_mcs(bundle)
    bp = G.induced_subgraph(bundle.graph, bundle.vertices(BIPARTITE_PART))
    _iso_check(rep, "BP is K[3,3]", bp, G.complete_bipartite(3, 3))
    cls = classify_hyperplane(st, MERMIN_SQUARE)
    rep.check("MS is a 3x3 grid", cls.kind == "grid" and cls.grid_shape == (3, 3), cls.grid_shape)
    ms = G.induced_subgraph(bundle.graph, bundle.vertices(MERMIN_SQUARE))
    rep.check("MS is 4-regular", ms.regular_degree() == 4)
    rep.witness["edge map"] = _maps_into(bundle, [(bundle.vertex(bp.labels[i]), bundle.vertex(bp.labels[j]))
                                                  for i, j in bp.edges()], MERMIN_SQUARE, rep,
                                         "BP edges map to MS vertices")
    _line_product_closure(bundle, st, MERMIN_SQUARE, rep, "two operators on an MS line give the third")
    return rep


def _i_pg(bundle):
    _two_qubit(bundle, "I_PG")
    rep = PartitionReport(name="I_PG")
    st = enumerate_mcs(bundle)
    cls = classify_hyperplane(st, TWO_QUBIT_OVOID)
    rep.check("I is an ovoid", cls.kind == "ovoid")
    alpha = G.independence_number(bundle.graph)
    rep.check("I is a maximum independent set",
              G.is_independent(bundle.graph, bundle.vertices(TWO_QUBIT_OVOID)) and alpha == len(TWO_QUBIT_OVOID), alpha)
    pg = _rest(bundle, TWO_QUBIT_OVOID)
    rep.check("cover size is 10", len(pg) == 10, len(pg))
    sub = G.induced_subgraph(bundle.graph, bundle.vertices(pg))
    _iso_check(rep, "PG is the Petersen graph", sub, G.petersen_graph())
    rep.witness["edge map"] = _maps_into(bundle, [(bundle.vertex(sub.labels[i]), bundle.vertex(sub.labels[j]))
                                                  for i, j in sub.edges()], TWO_QUBIT_OVOID, rep,
                                         "PG edges map to I vertices")
    return rep


def qutrit_dual(bundle: PauliGraphBundle):
    """``(structure, W9 graph, dual structure)`` for two qutrits."""
    st = enumerate_mcs(bundle)
    return st, dual_graph(st), dual_structure(st)


def _qutrit_grid(bundle):
    _two_qutrit(bundle, "QUTRIT_GRID")
    rep = PartitionReport(name="QUTRIT_GRID")
    st, w9, dst = qutrit_dual(bundle)
    grid = [n for n in st.line_names if n[0] in "LMNP"]
    xs = [n for n in st.line_names if n[0] == "X"]
    cube = [n for n in st.line_names if n[0] in "YZ"]
    rep.check("sizes 16 + 8 + 16", (len(grid), len(xs), len(cube)) == (16, 8, 16))
    cls = classify_hyperplane(dst, grid)
    rep.check("L/M/N/P form a 4x4 grid hyperplane", cls.kind == "grid" and cls.grid_shape == (4, 4), cls.grid_shape)
    _iso_check(rep, "L/M/N/P induce the 4x4 grid graph", G.induced_subgraph(w9, w9.indices(grid)), G.rook_graph(4, 4))
    rep.check("X_i are pairwise non-adjacent", G.is_independent(w9, w9.indices(xs)))
    rep.check("X_i are pairwise disjoint MCSs", all(
        not st.line_masks[st.line(a)] & st.line_masks[st.line(b)] for a, b in itertools.combinations(xs, 2)))
    _iso_check(rep, "Y/Z induce a 4-cube", G.induced_subgraph(w9, w9.indices(cube)), G.hypercube(4))
    return rep


def _balanced_bipartition(g: G.LabeledGraph):
    """Split a bipartite graph into two equal colour classes, or None."""
    color = G.is_bipartite(g)
    if color is None:
        return None
    comps, seen = [], set()
    for s in range(g.v):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in G.bits(g.adj[u]):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    for flips in itertools.product((0, 1), repeat=len(comps)):
        side = [[], []]
        for comp, fl in zip(comps, flips):
            for u in comp:
                side[color[u] ^ fl].append(u)
        if len(side[0]) == len(side[1]):
            return sorted(side[0]), sorted(side[1])
    return None


def _qutrit_ovoid(bundle, ovoid: Sequence[str] = QUTRIT_OVOID):
    _two_qutrit(bundle, "QUTRIT_OVOID")
    rep = PartitionReport(name="QUTRIT_OVOID")
    st, w9, dst = qutrit_dual(bundle)
    ov = w9.indices(ovoid)
    rep.check("ovoid has 10 vertices", len(set(ov)) == 10)
    rep.check("ovoid is independent in W9", G.is_independent(w9, ov))
    rep.check("ovoid meets every dual line once", classify_hyperplane(dst, ovoid).kind == "ovoid")
    ref = ov[0]
    x = st.line_names[ref]
    triangles = []
    for dl in dst.through[ref]:
        tri = [p for p in dst.lines[dl] if p != ref]
        triangles.append(tri)
    rep.check("four triangles", len(triangles) == 4 and all(len(t) == 3 and G.is_clique(w9, t) for t in triangles))
    # the three MCSs of a triangle meet in the same pair of operators; the pairs make up MCS x
    common_union = 0
    ok = True
    for tri in triangles:
        meet = st.line_masks[ref]
        for t in tri:
            meet &= st.line_masks[t]
        ok &= G.popcount(meet) == bundle.params.p - 1
        common_union |= meet
    rep.check("triangle lines share one operator pair", ok)
    rep.check("shared operators form the MCS " + x, common_union == st.line_masks[ref])
    used = set(ov) | {t for tri in triangles for t in tri}
    rest = [v for v in range(w9.v) if v not in used]
    sub = G.induced_subgraph(w9, rest)
    halves = _balanced_bipartition(sub)
    rep.check("remaining 18 vertices split into two 9-cocliques", len(rest) == 18 and halves is not None)
    if halves:
        rep.witness["cocliques"] = [[sub.labels[i] for i in h] for h in halves]
    rep.witness["triangles"] = [[w9.labels[t] for t in tri] for tri in triangles]
    rep.witness["reference"] = x
    covered = len(ov) + sum(len(t) for t in triangles) + (sum(len(h) for h in halves) if halves else 0)
    rep.check("parts cover all 40 vertices", covered == 40, covered)
    return rep


def ovoids_through(w9: G.LabeledGraph, vertex: int, size: int = 10) -> list:
    """Independent sets of ``size`` vertices containing ``vertex``."""
    pool = [v for v in range(w9.v) if v == vertex or not w9.has_edge(v, vertex)]
    return G.independent_sets_of_size(w9, size, within=pool, containing=[vertex])


def _qutrit_perp(bundle, reference: str = "L1"):
    _two_qutrit(bundle, "QUTRIT_PERP")
    rep = PartitionReport(name="QUTRIT_PERP")
    st, w9, dst = qutrit_dual(bundle)
    x = w9.index(reference)
    perp = perp_set(dst, x)
    rep.check("reference has 12 neighbours", len(perp) == 13 and w9.degree(x) == 12, w9.degree(x))
    rep.check("perp-set is a hyperplane", classify_hyperplane(dst, perp).kind == "perp_set")
    rest = [v for v in range(w9.v) if v not in perp]
    rep.check("27 remaining vertices", len(rest) == 27, len(rest))
    ovoids = [o for o in ovoids_through(w9, x) if classify_hyperplane(dst, o).kind == "ovoid"]
    covers = exact_covers(rest, {o: [v for v in o if v != x] for o in ovoids}, limit=1)
    rep.check("three ovoids through the reference cover the rest", bool(covers) and len(covers[0]) == 3)
    if covers:
        trio = covers[0]
        pair_ok = all(set(a) & set(b) == {x} for a, b in itertools.combinations(trio, 2))
        rep.check("ovoids pairwise meet only in the reference", pair_ok)
        rep.witness["ovoids"] = [[w9.labels[v] for v in o] for o in trio]
    rep.witness["ovoids through reference"] = len(ovoids)
    return rep
