"""Named verification suites: each returns a Report of exact checks."""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ThreadPoolExecutor

from . import graphs as G
from . import geometry as geo
from . import polar
from . import rings
from .pauli import SystemParams, all_indices, commutes, equal_up_to_phase, make_operator
from .report import Report

MUB_TOL = 1e-8


def _spec(d: dict) -> dict:
    return {int(k): v for k, v in sorted(d.items())}


def _subgraph_checks(rep: Report, prefix: str, g: G.LabeledGraph, spectrum=None, girth="skip", kappa=None):
    """``kappa`` is the tabulated invariant, which is the chromatic number of each graph.

    The minimum vertex cut is reported alongside, for information.
    """
    if spectrum is not None:
        rep.check(f"{prefix} spectrum", expected=_spec(spectrum), measured=_spec(G.spectrum(g)))
    if girth != "skip":
        rep.check(f"{prefix} girth", expected=girth, measured=G.girth(g))
    if kappa is not None:
        rep.check(f"{prefix} kappa (chromatic number)", expected=kappa, measured=G.chromatic_number(g))
        rep.info(f"{prefix} minimum vertex cut", measured=G.vertex_connectivity(g))


def p4_invariants(bundle) -> Report:
    rep = Report("two-qubit Pauli graph invariants")
    g = bundle.graph
    rep.check("vertices", expected=15, measured=g.v)
    rep.check("edges", expected=45, measured=g.edge_count)
    rep.check("regular degree", expected=6, measured=g.regular_degree())
    _subgraph_checks(rep, "P4", g, {-3: 5, 1: 9, 6: 1}, 3, 4)
    return rep


def p4_subgraphs(bundle) -> Report:
    rep = Report("two-qubit distinguished subgraphs")
    g = bundle.graph
    cover = G.minimum_vertex_cover(g)
    rep.check("minimum vertex cover size", expected=10, measured=len(cover))
    pg = G.induced_subgraph(g, cover)
    rep.check("cover induces the Petersen graph", G.is_isomorphic(pg, G.petersen_graph())[0])
    _subgraph_checks(rep, "cover", pg, {-2: 4, 1: 5, 3: 1}, 5, 3)
    ms = G.induced_subgraph(g, bundle.vertices(geo.MERMIN_SQUARE))
    _subgraph_checks(rep, "Mermin square", ms, {-2: 4, 1: 4, 4: 1}, 3, 3)
    bp = G.induced_subgraph(g, bundle.vertices(geo.BIPARTITE_PART))
    _subgraph_checks(rep, "bipartite part", bp, {-3: 1, 0: 4, 3: 1}, 4, 2)
    fp = G.induced_subgraph(g, bundle.vertices(geo.FANO_PENCIL))
    _subgraph_checks(rep, "Fano pencil", fp, {-2: 1, -1: 3, 1: 2, 3: 1}, 3, 3)
    cb = G.induced_subgraph(g, [v for v in range(g.v) if g.labels[v] not in geo.FANO_PENCIL])
    _subgraph_checks(rep, "cube", cb, {-3: 1, -1: 3, 1: 3, 3: 1}, 4, 2)
    rep.check("cube part is the 3-cube", G.is_isomorphic(cb, G.hypercube(3))[0])
    return rep


def structural_isomorphisms(bundle) -> Report:
    rep = Report("structural isomorphisms")
    g = bundle.graph
    model = G.complement(G.line_graph(G.complete_graph(6)))
    ok, m = G.is_isomorphic(g, model)
    rep.check("P4 is the complement of the line graph of K6", ok and G.check_isomorphism(g, model, m))
    k7 = G.complement(G.line_graph(G.complete_graph(7)))
    cover = G.minimum_vertex_cover(k7)
    rep.check("minimum vertex cover of the complement of L(K7)", expected=15, measured=len(cover))
    sub = G.induced_subgraph(k7, cover)
    ok, m = G.is_isomorphic(sub, g)
    rep.check("that cover induces P4", ok and G.check_isomorphism(sub, g, m))
    return rep


def mermin(bundle) -> Report:
    rep = Report("Mermin square")
    st = geo.enumerate_mcs(bundle)
    arr = geo.mermin_arrangement(st, geo.MERMIN_SQUARE)
    rep.witness["arrangement"] = arr
    pol = geo.verify_polarization(bundle, arr)
    # phases are exponents of i: 2 means -I
    rep.check("row product phases", expected=(2, 2, 2), measured=pol.rows)
    rep.check("column product phases", expected=(0, 0, 0), measured=pol.columns)
    rep.check("product of all six scalars is -1", pol.contextual)
    return rep


def w2_geometry(bundle) -> Report:
    rep = Report("W(2) geometry")
    st = geo.enumerate_mcs(bundle)
    rep.check("lines", expected=15, measured=len(st.lines))
    spreads = geo.find_spreads(st)
    rep.check("spreads", expected=6, measured=len(spreads))
    worst = max(geo.mub_deviation(bundle, [st.lines[k] for k in s]) for s in spreads)
    rep.check(f"spread bases mutually unbiased (tol {MUB_TOL:g})", worst < MUB_TOL, measured=worst)
    alpha, ovoids = G.maximum_independent_set(bundle.graph, enumerate_all=True)
    rep.check("ovoids (maximum independent sets)", expected=6, measured=len(ovoids))
    rep.check("each is a geometric ovoid", all(geo.classify_hyperplane(st, o).kind == "ovoid" for o in ovoids))
    kinds = {"entangled": 0, "unentangled": 0}
    agree = True
    for line in st.lines:
        kind = geo.line_entanglement(bundle, line)
        kinds[kind] += 1
        ranks = set(geo.line_schmidt_ranks(bundle, line))
        agree &= ranks == ({1} if kind == "unentangled" else {bundle.params.p})
    rep.check("unentangled lines", expected=9, measured=kinds["unentangled"])
    rep.check("entangled lines", expected=6, measured=kinds["entangled"])
    rep.check("criterion agrees with Schmidt ranks on every line", agree)
    return rep


def p9_graph(bundle) -> Report:
    rep = Report("two-qutrit Pauli graph")
    g = bundle.graph
    rep.check("vertices", expected=80, measured=g.v)
    rep.check("regular degree", expected=25, measured=g.regular_degree())
    rep.check("spectrum", expected={-7: 15, -1: 40, 5: 24, 25: 1}, measured=_spec(G.spectrum(g)))
    rep.check("not strongly regular", G.is_strongly_regular(g) is None)
    st = geo.enumerate_mcs(bundle)
    rep.check("maximal commuting subsets of size 8", expected=40, measured=len(st.lines))
    listed = {frozenset(bundle.vertices(v.split())) for v in geo.QUTRIT_MCS.values()}
    rep.check("they coincide with the named list", listed == {frozenset(line) for line in st.lines})
    return rep


def w9_dual(bundle) -> Report:
    rep = Report("two-qutrit dual graph")
    st, w9, dst = geo.qutrit_dual(bundle)
    rep.check("vertices", expected=40, measured=w9.v)
    rep.check("regular degree", expected=12, measured=w9.regular_degree())
    rep.check("spectrum", expected={-4: 15, 2: 24, 12: 1}, measured=_spec(G.spectrum(w9)))
    rep.check("independence number", expected=10, measured=G.independence_number(w9))
    for name in ("QUTRIT_OVOID", "QUTRIT_PERP", "QUTRIT_GRID"):
        rep.extend(geo.verify_partition(bundle, name), prefix=name + ": ")
    return rep


def qutrit_mubs(bundle) -> Report:
    rep = Report("qutrit mutually unbiased bases")
    st = geo.enumerate_mcs(bundle)
    lines = [st.lines[st.line(n)] for n in geo.QUTRIT_OVOID]
    rep.check("lines of the spread are pairwise disjoint",
              all(not set(a) & set(b) for a, b in itertools.combinations(lines, 2)))
    rep.check("bases", expected=10, measured=len(lines))
    dev = geo.mub_deviation(bundle, lines)
    rep.check(f"pairwise unbiased (tol {MUB_TOL:g})", dev < MUB_TOL, measured=dev)
    return rep


def ring_lines() -> Report:
    rep = Report("projective ring lines")
    m2 = rings.builtin_ring("M2Z2")
    rep.check("units of M2(Z2)", expected=["1'", "2'", "9'", "11'", "12'", "13'"],
              measured=[m2.labels[u] for u in m2.units])
    bundle = geo.build_pauli_graph(SystemParams(2, 2))
    for name in ("F4", "Z2x_sq", "Z2xZ2", "M2Z2"):
        line = rings.projective_line(rings.builtin_ring(name))
        rep.extend(rings.hyperplane_correspondence(line, bundle), prefix=f"{name}: ")
    return rep


def polar_suite(max_rank: int = 4) -> Report:
    rep = Report("symplectic polar spaces")
    expected = {
        2: {"v": 15, "L": 15, "D": 6, "r": 1, "l": -3, "lambda": 1, "mu": 3, "s": 2, "t": 2, "alpha": 1},
        3: {"v": 63, "L": 45, "D": 30, "r": 3, "l": -5, "lambda": 13, "mu": 15, "s": 6, "t": 4, "alpha": 3},
        4: {"v": 255, "L": 153, "D": 126, "r": 7, "l": -9, "lambda": 61, "mu": 63, "s": 14, "t": 8, "alpha": 7},
    }
    for N in range(2, max_rank + 1):
        rep.check(f"N={N} predicted invariants", expected=expected[N], measured=polar.table_row(N))
    for N in range(2, max_rank + 1):
        bundle = geo.build_pauli_graph(SystemParams(2, N))
        sub = polar.cross_validate(2, N, bundle, mcs=N <= 3)
        rep.extend(sub, prefix=f"N={N}: ")
    return rep


SYSTEMS = ((2, 1), (2, 2), (3, 1), (3, 2), (2, 3))


def oracle_equivalence(pairs_per_system: int = 1000, seed: int = 0) -> Report:
    rep = Report("symplectic vs monomial oracle")
    rng = random.Random(seed)
    for p, n in SYSTEMS:
        params = SystemParams(p, n)
        bundle = geo.build_pauli_graph(params, check="none")
        ops, g = bundle.operators, bundle.graph
        bad = sum(g.has_edge(i, j) != commutes(ops[i], ops[j])
                  for i, j in itertools.combinations(range(g.v), 2))
        rep.check(f"p={p} n={n}: commutation agrees on all pairs", expected=0, measured=bad)
        idx = all_indices(params, include_zero=True)
        bad = 0
        for _ in range(pairs_per_system):
            u, v = rng.choice(idx), rng.choice(idx)
            prod = make_operator(params, u) @ make_operator(params, v)
            bad += equal_up_to_phase(prod, make_operator(params, u.add(v, p))) is None
        rep.check(f"p={p} n={n}: group law up to phase", expected=0, measured=bad)
    return rep


def _two_qubit():
    b = geo.build_pauli_graph(SystemParams(2, 2))
    out = [p4_invariants(b), p4_subgraphs(b), structural_isomorphisms(b), mermin(b), w2_geometry(b)]
    for name in ("FP_CB", "BP_MS", "I_PG"):
        out.append(geo.verify_partition(b, name))
    return out


def _two_qutrit():
    b = geo.build_pauli_graph(SystemParams(3, 2))
    return [p9_graph(b), w9_dual(b), qutrit_mubs(b)]


SUITES = {
    "two_qubit": _two_qubit,
    "two_qutrit": _two_qutrit,
    "ring_lines": lambda: [ring_lines()],
    "polar": lambda: [polar_suite()],
    "oracle": lambda: [oracle_equivalence()],
}


def _timed(fn):
    t = time.perf_counter()
    reports = fn()
    dt = time.perf_counter() - t
    for r in reports:
        r.seconds = dt / len(reports)
    return reports


def run_suite(name: str, threads: int = 1) -> list:
    """Reports of one suite (or every suite for ``"all"``), in a fixed order."""
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES:
            raise KeyError(f"unknown suite {n!r}")
    if threads <= 1 or len(names) == 1:
        results = [_timed(SUITES[n]) for n in names]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda n: _timed(SUITES[n]), names))
    return [r for rs in results for r in rs]
