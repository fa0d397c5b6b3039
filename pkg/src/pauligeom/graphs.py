"""Finite simple graphs on bitset adjacency, with the invariants and searches
needed to dissect Pauli graphs.

Vertex ``i`` has neighbourhood ``adj[i]``, an int whose bit ``j`` is set iff
``i ~ j``.  Graphs are treated as immutable once built.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.sparse
from scipy.sparse.csgraph import maximum_flow


class NonIntegralSpectrumError(ValueError):
    pass


def bits(mask: int):
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << int(v)
    return m


class LabeledGraph:
    """Undirected simple graph with display labels."""

    def __init__(self, adj: Sequence[int], labels: Optional[Sequence] = None):
        self.adj = tuple(int(a) for a in adj)
        n = len(self.adj)
        if labels is None:
            labels = [str(i) for i in range(n)]
        self.labels = tuple(labels)
        if len(self.labels) != n:
            raise ValueError("one label per vertex required")
        if len(set(self.labels)) != n:
            raise ValueError("labels must be distinct")
        full = (1 << n) - 1
        for i, a in enumerate(self.adj):
            if a >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            if a & ~full:
                raise ValueError(f"vertex {i} has a neighbour out of range")
            for j in bits(a):
                if not self.adj[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency {i}->{j}")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._cache: dict = {}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "LabeledGraph":
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError("loops are not allowed")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(adj, labels)

    @classmethod
    def from_matrix(cls, matrix, labels=None) -> "LabeledGraph":
        m = np.asarray(matrix)
        adj = [to_mask(np.flatnonzero(row)) for row in m]
        return cls(adj, labels)

    @property
    def v(self) -> int:
        return len(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledGraph) and self.adj == other.adj and self.labels == other.labels

    def __hash__(self):
        return hash((self.adj, self.labels))

    def __repr__(self) -> str:
        return f"LabeledGraph(v={self.v}, e={self.edge_count})"

    def index(self, label) -> int:
        return self._index[label]

    def indices(self, labels: Iterable) -> list:
        return [self._index[lab] for lab in labels]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, i: int) -> list:
        return list(bits(self.adj[i]))

    def degree(self, i: int) -> int:
        return popcount(self.adj[i])

    @property
    def degrees(self) -> list:
        return [popcount(a) for a in self.adj]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list:
        return [(i, j) for i in range(self.v) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    def regular_degree(self) -> Optional[int]:
        degs = set(self.degrees)
        return degs.pop() if len(degs) == 1 else None

    def to_numpy(self) -> np.ndarray:
        a = np.zeros((self.v, self.v), dtype=np.int64)
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1
        return a

    def relabeled(self, labels: Sequence) -> "LabeledGraph":
        return LabeledGraph(self.adj, labels)


# --- constructions --------------------------------------------------------

def complete_graph(n: int) -> LabeledGraph:
    full = (1 << n) - 1
    return LabeledGraph([full & ~(1 << i) for i in range(n)])


def empty_graph(n: int) -> LabeledGraph:
    return LabeledGraph([0] * n)


def complete_bipartite(m: int, n: int) -> LabeledGraph:
    left = (1 << m) - 1
    right = ((1 << n) - 1) << m
    return LabeledGraph([right] * m + [left] * n)


def hypercube(k: int) -> LabeledGraph:
    n = 1 << k
    return LabeledGraph([to_mask(i ^ (1 << b) for b in range(k)) for i in range(n)])


def rook_graph(m: int, n: int) -> LabeledGraph:
    """Cartesian product K_m x K_n (the collinearity graph of an m-by-n grid)."""
    edges = [
        (r1 * n + c1, r2 * n + c2)
        for (r1, c1), (r2, c2) in itertools.combinations(itertools.product(range(m), range(n)), 2)
        if r1 == r2 or c1 == c2
    ]
    return LabeledGraph.from_edges(m * n, edges)


def petersen_graph() -> LabeledGraph:
    """Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, j in itertools.combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    return LabeledGraph.from_edges(10, edges, [f"{a}{b}" for a, b in pairs])


def complement(g: LabeledGraph) -> LabeledGraph:
    full = (1 << g.v) - 1
    return LabeledGraph([full & ~a & ~(1 << i) for i, a in enumerate(g.adj)], g.labels)


def line_graph(g: LabeledGraph) -> LabeledGraph:
    """Vertices are edges of ``g``, adjacent when they share an endpoint."""
    es = g.edges()
    adjl = [0] * len(es)
    for x, y in itertools.combinations(range(len(es)), 2):
        if set(es[x]) & set(es[y]):
            adjl[x] |= 1 << y
            adjl[y] |= 1 << x
    return LabeledGraph(adjl, [f"{g.labels[i]}-{g.labels[j]}" for i, j in es])


def induced_subgraph(g: LabeledGraph, vertices: Iterable[int]) -> LabeledGraph:
    vs = sorted(set(vertices))
    pos = {v: k for k, v in enumerate(vs)}
    adj = [to_mask(pos[w] for w in bits(g.adj[v]) if w in pos) for v in vs]
    return LabeledGraph(adj, [g.labels[v] for v in vs])


# --- spectrum -------------------------------------------------------------

class Spectrum(dict):
    """Eigenvalue -> multiplicity, for integral spectra."""

    def __str__(self) -> str:
        parts = []
        for ev in sorted(self):
            m = self[ev]
            parts.append(f"{ev}" if m == 1 else f"{ev}^{m}")
        return "{" + ", ".join(parts) + "}"

    def total(self) -> int:
        return sum(self.values())

    def trace(self) -> int:
        return sum(ev * m for ev, m in self.items())

    def trace_squares(self) -> int:
        return sum(ev * ev * m for ev, m in self.items())


def eigenvalues(g: LabeledGraph) -> np.ndarray:
    if "eigs" not in g._cache:
        g._cache["eigs"] = np.linalg.eigvalsh(g.to_numpy().astype(float))
    return g._cache["eigs"]


def spectrum(g: LabeledGraph, tol: float = 1e-6) -> Spectrum:
    eigs = eigenvalues(g)
    rounded = np.rint(eigs)
    off = np.abs(eigs - rounded)
    if off.size and off.max() > tol:
        raise NonIntegralSpectrumError(f"eigenvalue {eigs[off.argmax()]!r} is not an integer")
    spec = Spectrum()
    for ev in rounded.astype(int):
        spec[int(ev)] = spec.get(int(ev), 0) + 1
    return Spectrum(sorted(spec.items()))


# --- girth, connectivity --------------------------------------------------

def girth(g: LabeledGraph):
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for s in range(g.v):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in bits(g.adj[u]):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
            if 2 * (dist[frontier[0]] + 1) > best:
                break
            frontier = nxt
    return best


def _split_network(g: LabeledGraph):
    # vertex i -> in-node 2i, out-node 2i+1
    n = g.v
    rows, cols = [], []
    for i in range(n):
        rows.append(2 * i)
        cols.append(2 * i + 1)
        for j in bits(g.adj[i]):
            rows.append(2 * i + 1)
            cols.append(2 * j)
    data = np.ones(len(rows), dtype=np.int32)
    return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(2 * n, 2 * n))


def local_vertex_connectivity(g: LabeledGraph, s: int, t: int, network=None) -> int:
    """Maximum number of internally disjoint s-t paths, for non-adjacent s, t."""
    if g.has_edge(s, t) or s == t:
        raise ValueError("local connectivity is defined here for distinct non-adjacent vertices")
    if network is None:
        network = _split_network(g)
    return int(maximum_flow(network, 2 * s + 1, 2 * t).flow_value)


def vertex_connectivity(g: LabeledGraph, max_vertices: int = 100) -> int:
    """Minimum size of a vertex cut (``v - 1`` for complete graphs)."""
    n = g.v
    if n > max_vertices:
        raise ValueError(f"vertex connectivity is limited to {max_vertices} vertices")
    if n <= 1:
        return 0
    full = (1 << n) - 1
    if all(a | (1 << i) == full for i, a in enumerate(g.adj)):
        return n - 1
    net = _split_network(g)
    # Esfahanian-Hakimi: a minimum-degree vertex and its neighbourhood suffice
    v = min(range(n), key=g.degree)
    best = g.degree(v)
    for w in range(n):
        if w != v and not g.has_edge(v, w):
            best = min(best, local_vertex_connectivity(g, v, w, net))
    nbrs = g.neighbors(v)
    for x, y in itertools.combinations(nbrs, 2):
        if not g.has_edge(x, y):
            best = min(best, local_vertex_connectivity(g, x, y, net))
    return best


def is_connected(g: LabeledGraph) -> bool:
    if g.v == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.v) - 1


# --- cliques and independent sets -----------------------------------------

def max_cliques(g: LabeledGraph, size: Optional[int] = None) -> list:
    """Maximal cliques (of exactly ``size`` vertices if given), as sorted tuples.

    Bron-Kerbosch with pivoting; output sorted lexicographically.
    """
    adj = g.adj
    found = []

    def expand(r: list, p: int, x: int) -> None:
        if not p and not x:
            if size is None or len(r) == size:
                found.append(tuple(sorted(r)))
            return
        if size is not None and len(r) + popcount(p) < size:
            return
        pivot = max(bits(p | x), key=lambda u: popcount(p & adj[u]))
        for v in bits(p & ~adj[pivot]):
            r.append(v)
            expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    expand([], (1 << g.v) - 1, 0)
    found.sort()
    return found


def _color_sort(adj: Sequence[int], p: int):
    """Greedy colouring of candidate set ``p``; returns (vertices, colours) by colour."""
    order, colors = [], []
    color = 0
    remaining = p
    while remaining:
        color += 1
        avail = remaining
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adj[v] & ~(1 << v)
            remaining &= ~(1 << v)
            order.append(v)
            colors.append(color)
    return order, colors


def _clique_search(adj: Sequence[int], start: int, seed: Sequence[int] = (), target: Optional[int] = None):
    """Maximum cliques in the graph ``adj`` restricted to ``start``.

    With ``target`` set, returns every clique of exactly that size (including
    ``seed``); otherwise returns one maximum clique.
    """
    best: list = [list(seed)]
    hits: list = []

    def expand(r: list, p: int) -> None:
        order, colors = _color_sort(adj, p)
        for k in range(len(order) - 1, -1, -1):
            bound = len(r) + colors[k]
            if bound < (target if target is not None else len(best[0]) + 1):
                return
            v = order[k]
            r.append(v)
            rest = p & adj[v]
            if target is not None and len(r) == target:
                hits.append(tuple(sorted(r)))
            elif rest:
                expand(r, rest)
            elif target is None and len(r) > len(best[0]):
                best[0] = list(r)
            r.pop()
            p &= ~(1 << v)

    if target is not None and len(seed) == target:
        return [tuple(sorted(seed))]
    if start:
        expand(list(seed), start)
    if target is not None:
        return sorted(set(hits))
    return tuple(sorted(best[0]))


def independent_sets_of_size(g: LabeledGraph, k: int, within: Optional[Iterable[int]] = None,
                             containing: Iterable[int] = ()) -> list:
    """All independent sets of ``k`` vertices inside ``within`` that contain ``containing``."""
    cadj = complement(g).adj
    pool = to_mask(within) if within is not None else (1 << g.v) - 1
    seed = list(containing)
    for u, w in itertools.combinations(seed, 2):
        if g.has_edge(u, w):
            return []
    start = pool
    for u in seed:
        start &= cadj[u]
    return _clique_search(cadj, start, seed, target=k)


def maximum_independent_set(g: LabeledGraph, enumerate_all: bool = False):
    """Return ``(alpha, sets)``: the independence number and one (or every) maximum independent set."""
    if g.v == 0:
        return 0, [()]
    cadj = complement(g).adj
    one = _clique_search(cadj, (1 << g.v) - 1)
    alpha = len(one)
    if not enumerate_all:
        return alpha, [one]
    return alpha, _clique_search(cadj, (1 << g.v) - 1, (), target=alpha)


def independence_number(g: LabeledGraph) -> int:
    return maximum_independent_set(g)[0]


def minimum_vertex_cover(g: LabeledGraph) -> tuple:
    _, (ind,) = maximum_independent_set(g)
    keep = set(ind)
    return tuple(v for v in range(g.v) if v not in keep)


def is_independent(g: LabeledGraph, vertices: Iterable[int]) -> bool:
    m = to_mask(vertices)
    return all(not g.adj[v] & m for v in bits(m))


def is_clique(g: LabeledGraph, vertices: Iterable[int]) -> bool:
    m = to_mask(vertices)
    return all((g.adj[v] | (1 << v)) & m == m for v in bits(m))


def is_bipartite(g: LabeledGraph):
    """Return a 2-colouring (list of 0/1) or None."""
    color = [-1] * g.v
    for s in range(g.v):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in bits(g.adj[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def colouring(g: LabeledGraph, k: int) -> Optional[list]:
    """A proper colouring with at most ``k`` colours, or None (DSATUR-ordered backtracking)."""
    n = g.v
    color = [-1] * n
    # colours already used by the neighbours of each vertex, as bit masks
    seen = [0] * n

    def pick() -> int:
        best, key = -1, None
        for u in range(n):
            if color[u] < 0:
                kk = (popcount(seen[u]), g.degree(u), -u)
                if key is None or kk > key:
                    best, key = u, kk
        return best

    def extend(done: int, used: int) -> bool:
        if done == n:
            return True
        u = pick()
        # a fresh colour is interchangeable with any other fresh one
        for c in range(min(used + 1, k)):
            if seen[u] >> c & 1:
                continue
            color[u] = c
            touched = [w for w in bits(g.adj[u]) if not seen[w] >> c & 1]
            for w in touched:
                seen[w] |= 1 << c
            if extend(done + 1, max(used, c + 1)):
                return True
            for w in touched:
                seen[w] &= ~(1 << c)
            color[u] = -1
        return False

    return list(color) if extend(0, 0) else None


def chromatic_number(g: LabeledGraph) -> int:
    """Least number of colours in a proper vertex colouring (exact; small graphs)."""
    if g.v == 0:
        return 0
    lower = max(1, max((len(c) for c in max_cliques(g)), default=1))
    k = lower
    while colouring(g, k) is None:
        k += 1
    return k


# --- isomorphism ----------------------------------------------------------

def _refine(graphs: Sequence[LabeledGraph]) -> list:
    """Joint colour refinement; colours are comparable across ``graphs``."""
    colors = [[g.degree(i) for i in range(g.v)] for g in graphs]
    n_classes = None
    while True:
        table: dict = {}
        new = []
        for g, col in zip(graphs, colors):
            sigs = [(col[i], tuple(sorted(col[j] for j in bits(g.adj[i])))) for i in range(g.v)]
            new.append(sigs)
            for s in sigs:
                table.setdefault(s, None)
        ranks = {s: k for k, s in enumerate(sorted(table))}
        colors = [[ranks[s] for s in sigs] for sigs in new]
        count = len(ranks)
        if count == n_classes:
            return colors
        n_classes = count


def find_isomorphism(g1: LabeledGraph, g2: LabeledGraph, max_vertices: int = 24) -> Optional[dict]:
    """Adjacency-preserving bijection ``{v1: v2}`` or None."""
    if g1.v > max_vertices or g2.v > max_vertices:
        raise ValueError(f"isomorphism search is limited to {max_vertices} vertices")
    if g1.v != g2.v or g1.edge_count != g2.edge_count:
        return None
    if sorted(g1.degrees) != sorted(g2.degrees):
        return None
    c1, c2 = _refine([g1, g2])
    if sorted(c1) != sorted(c2):
        return None
    n = g1.v
    if n == 0:
        return {}

    class_size = {c: c1.count(c) for c in set(c1)}
    order: list = []
    placed = 0
    while len(order) < n:
        # most constrained next: many placed neighbours, small colour class
        u = max((u for u in range(n) if not placed >> u & 1),
                key=lambda u: (popcount(g1.adj[u] & placed), -class_size[c1[u]], -u))
        order.append(u)
        placed |= 1 << u

    mapping = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        u = order[k]
        for w in range(n):
            if used[w] or c2[w] != c1[u]:
                continue
            ok = True
            for prev in order[:k]:
                if g1.has_edge(u, prev) != g2.has_edge(w, mapping[prev]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = w
            used[w] = True
            if extend(k + 1):
                return True
            used[w] = False
            mapping[u] = -1
        return False

    if not extend(0):
        return None
    return dict(enumerate(mapping))


def is_isomorphic(g1: LabeledGraph, g2: LabeledGraph):
    """Return ``(True, mapping)`` or ``(False, None)``."""
    m = find_isomorphism(g1, g2)
    return m is not None, m


def check_isomorphism(g1: LabeledGraph, g2: LabeledGraph, mapping: dict) -> bool:
    """Exhaustively confirm ``mapping`` is an isomorphism."""
    if sorted(mapping) != list(range(g1.v)) or sorted(mapping.values()) != list(range(g2.v)):
        return False
    return all(
        g1.has_edge(i, j) == g2.has_edge(mapping[i], mapping[j])
        for i, j in itertools.combinations(range(g1.v), 2)
    )


# --- strong regularity ----------------------------------------------------

@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int
    r: int
    l: int
    f: int
    g: int

    def as_tuple(self) -> tuple:
        return (self.v, self.k, self.lam, self.mu)


def srg_eigen_data(v: int, k: int, lam: int, mu: int):
    """Restricted eigenvalues ``r > l`` and multiplicities ``f`` (of r), ``g`` (of l).

    Exact integer arithmetic; raises ValueError for non-integral data.
    """
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = math.isqrt(disc)
    if root * root != disc or (lam - mu + root) % 2:
        raise ValueError("restricted eigenvalues are not integers")
    r = (lam - mu + root) // 2
    l = (lam - mu - root) // 2
    assert r + l == lam - mu and r * l == mu - k
    denom = (k + r * l) * (r - l)
    if denom:
        fn = -k * (l + 1) * (k - l)
        gn = k * (r + 1) * (k - r)
        if fn % denom or gn % denom:
            raise ValueError("eigenvalue multiplicities are not integers")
        f, g = fn // denom, gn // denom
    else:
        # mu = 0: disjoint union of cliques; use trace k + f r + g l = 0
        fn = -k - (v - 1) * l
        if fn % (r - l):
            raise ValueError("eigenvalue multiplicities are not integers")
        f = fn // (r - l)
        g = v - 1 - f
    return r, l, f, g


def is_strongly_regular(g: LabeledGraph) -> Optional[SrgParams]:
    """SRG parameters if ``g`` is strongly regular (complete/edgeless graphs excluded)."""
    k = g.regular_degree()
    if k is None or k == 0 or k == g.v - 1:
        return None
    lam = mu = None
    adj = g.adj
    for i in range(g.v):
        for j in range(i + 1, g.v):
            common = popcount(adj[i] & adj[j])
            if adj[i] >> j & 1:
                if lam is None:
                    lam = common
                elif common != lam:
                    return None
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    return None
    lam = lam or 0
    try:
        r, l, f, gm = srg_eigen_data(g.v, k, lam, mu)
    except ValueError:
        return None
    expected = Spectrum({k: 1})
    for ev, m in ((r, f), (l, gm)):
        if m:
            expected[ev] = expected.get(ev, 0) + m
    measured = spectrum(g)
    if dict(measured) != dict(expected):
        raise RuntimeError(f"SRG multiplicities {dict(expected)} disagree with spectrum {measured}")
    return SrgParams(g.v, k, lam, mu, r, l, f, gm)
