"""Acceptance gate: every criterion at its stated tolerance and time limit.

Each test times the whole computation, graph construction included.
"""
import time

import pytest

from pauligeom import geometry as geo
from pauligeom import graphs as G
from pauligeom import polar, rings, suites
from pauligeom.pauli import SystemParams


def build(p, n):
    return geo.build_pauli_graph(SystemParams(p, n))


def assert_report(rep):
    assert rep.ok, rep.as_text()


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.seconds < self.limit, f"took {self.seconds:.2f} s, limit {self.limit} s"


@pytest.fixture(scope="module", autouse=True)
def warm_up():
    # first calls pay for imports and LAPACK initialization
    G.spectrum(G.petersen_graph())
    build(2, 1)


@pytest.mark.criterion(1, "two-qubit Pauli graph invariants", 0.1)
def test_c01_p4_invariants():
    with Timer(0.1):
        b = build(2, 2)
        rep = suites.p4_invariants(b)
    assert_report(rep)
    g = b.graph
    assert (g.v, g.edge_count, g.regular_degree(), G.girth(g)) == (15, 45, 6, 3)
    assert G.spectrum(g) == {-3: 5, 1: 9, 6: 1}
    assert G.chromatic_number(g) == 4


@pytest.mark.criterion(2, "distinguished two-qubit subgraphs", 1.0)
def test_c02_subgraphs():
    with Timer(1.0):
        rep = suites.p4_subgraphs(build(2, 2))
    assert_report(rep)


@pytest.mark.criterion(3, "structural isomorphisms with Kneser-type graphs", 5.0)
def test_c03_isomorphisms():
    with Timer(5.0):
        b = build(2, 2)
        rep = suites.structural_isomorphisms(b)
        k6 = G.complement(G.line_graph(G.complete_graph(6)))
        m = G.find_isomorphism(b.graph, k6)
    assert_report(rep)
    assert G.check_isomorphism(b.graph, k6, m)


@pytest.mark.criterion(4, "Mermin square polarization", 0.1)
def test_c04_mermin():
    b = build(2, 2)
    with Timer(0.1):
        st = geo.enumerate_mcs(b)
        arr = geo.mermin_arrangement(st, geo.MERMIN_SQUARE)
        pol = geo.verify_polarization(b, arr)
    assert sorted(x for row in arr for x in row) == sorted(geo.MERMIN_SQUARE)
    assert all(G.is_clique(b.graph, b.vertices(r)) for r in arr)
    assert all(G.is_clique(b.graph, b.vertices(c)) for c in zip(*arr))
    assert pol.rows == (2, 2, 2)  # i^2 = -1
    assert pol.columns == (0, 0, 0)
    assert pol.contextual


@pytest.mark.criterion(5, "W(2): lines, spreads, MUBs, ovoids, entanglement", 1.0)
def test_c05_w2():
    with Timer(1.0):
        rep = suites.w2_geometry(build(2, 2))
    assert_report(rep)


@pytest.mark.criterion(6, "projective ring lines", 2.0)
def test_c06_ring_lines():
    with Timer(2.0):
        rep = suites.ring_lines()
        m2 = rings.builtin_ring("M2Z2")
        line = rings.projective_line(m2)
        dist, nbr = rings.pair_symmetric_subsets(line, ("1'", "0'"), ("0'", "1'"))
    assert_report(rep)
    assert len(line) == 35 and (len(dist), len(nbr)) == (6, 9)
    assert [m2.labels[u] for u in m2.units] == ["1'", "2'", "9'", "11'", "12'", "13'"]
    sizes = {n: len(rings.projective_line(rings.builtin_ring(n))) for n in ("F4", "Z2x_sq", "Z2xZ2")}
    assert sizes == {"F4": 5, "Z2x_sq": 6, "Z2xZ2": 9}


@pytest.mark.criterion(7, "two-qutrit Pauli graph and its 40 MCSs", 10.0)
def test_c07_p9():
    with Timer(10.0):
        rep = suites.p9_graph(build(3, 2))
    assert_report(rep)


@pytest.mark.criterion(8, "two-qutrit dual graph and its partitions", 60.0)
def test_c08_w9():
    with Timer(60.0):
        b = build(3, 2)
        rep = suites.w9_dual(b)
    assert_report(rep)
    st, w9, dst = geo.qutrit_dual(b)
    ov = w9.indices(geo.QUTRIT_OVOID)
    assert G.is_independent(w9, ov)
    assert all(len(set(line) & set(ov)) == 1 for line in dst.lines)


@pytest.mark.criterion(9, "mutually unbiased bases in dimension 9", 5.0)
def test_c09_qutrit_mubs():
    with Timer(5.0):
        rep = suites.qutrit_mubs(build(3, 2))
    assert_report(rep)


@pytest.mark.criterion(10, "symplectic polar space predictions", 120.0)
def test_c10_polar():
    with Timer(120.0):
        rep = suites.polar_suite(max_rank=4)
    assert_report(rep)
    assert polar.predicted_pg(2, 3).srg == (63, 30, 13, 15)
    assert polar.predicted_pg(2, 4).srg == (255, 126, 61, 63)


@pytest.mark.criterion(11, "symplectic vs monomial oracle equivalence", 30.0)
def test_c11_oracle():
    with Timer(30.0):
        rep = suites.oracle_equivalence(pairs_per_system=1000)
    assert_report(rep)
    assert len([c for c in rep.checks if "all pairs" in c.clause]) == len(suites.SYSTEMS)
    assert set(suites.SYSTEMS) == {(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)}
