import itertools

import numpy as np
import pytest

from pauligeom import geometry as geo
from pauligeom import graphs as G
from pauligeom.pauli import SystemParams

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1, -1]).astype(complex)
SY = 1j * SX @ SZ
I2 = np.eye(2)


@pytest.fixture(scope="module")
def p4():
    return geo.build_pauli_graph(SystemParams(2, 2), check="full")


@pytest.fixture(scope="module")
def w2(p4):
    return geo.enumerate_mcs(p4)


@pytest.fixture(scope="module")
def p9():
    return geo.build_pauli_graph(SystemParams(3, 2), check="full")


def test_qubit_labels(p4):
    assert p4.labels == ("1", "2", "3", "a", "4", "5", "6", "b", "7", "8", "9", "c", "10", "11", "12")
    expected = {"1": np.kron(I2, SX), "2": np.kron(I2, SY), "3": np.kron(I2, SZ), "a": np.kron(SX, I2),
                "4": np.kron(SX, SX), "b": np.kron(SY, I2), "c": np.kron(SZ, I2), "12": np.kron(SZ, SZ)}
    for lab, m in expected.items():
        assert np.allclose(p4.operator(lab).to_dense(), m), lab


def test_qutrit_labels(p9):
    X = np.roll(np.eye(3), 1, axis=0)
    Z = np.diag(np.exp(2j * np.pi * np.arange(3) / 3))
    # sigma_1..sigma_8 = Z, X, Y, V, Z^2, X^2, Y^2, V^2 with Y = XZ and V = XZ^2
    sig = [Z, X, X @ Z, X @ Z @ Z, Z @ Z, X @ X, X @ X @ Z @ Z, X @ X @ Z]
    I3 = np.eye(3)
    checks = {"1": (I3, sig[0]), "8": (I3, sig[7]), "a": (sig[0], I3), "9": (sig[0], sig[0]),
              "b": (sig[1], I3), "17": (sig[1], sig[0]), "h": (sig[7], I3), "72": (sig[7], sig[7])}
    for lab, (A, B) in checks.items():
        assert np.allclose(p9.operator(lab).to_dense(), np.kron(A, B)), lab
    assert len(set(p9.labels)) == 80


def test_other_labels():
    b = geo.build_pauli_graph(SystemParams(2, 1))
    assert b.labels == ("1|0", "1|1", "0|1")
    assert geo.build_pauli_graph(SystemParams(2, 3)).graph.v == 63


def test_bundle_lookups(p4):
    idx = p4.index_of("4")
    assert idx.a == (1, 1) and idx.b == (0, 0)
    assert p4.label_of_index(idx) == "4"
    assert p4.vertices(["1", "a"]) == [0, 3]


def test_build_options():
    with pytest.raises(ValueError):
        geo.build_pauli_graph(SystemParams(2, 2), check="bogus")
    with pytest.raises(ValueError):
        geo.build_pauli_graph(SystemParams(2, 2), max_vertices=10)
    order5 = geo.single_qudit_order(5)
    assert order5[0] == (0, 0) and sorted(order5) == sorted(itertools.product(range(5), repeat=2))


def test_w2_lines(w2, p4):
    assert len(w2.lines) == 15
    assert all(len(line) == 3 and G.is_clique(p4.graph, line) for line in w2.lines)
    assert all(len(t) == 3 for t in w2.through)
    assert w2.collinearity_graph().edges() == p4.graph.edges()
    assert all(geo.closes_under_product(p4, line) for line in w2.lines)


def test_dual_of_w2_is_self_dual(w2):
    dual = geo.dual_graph(w2)
    assert G.spectrum(dual) == {-3: 5, 1: 9, 6: 1}
    dst = geo.dual_structure(w2)
    assert len(dst.lines) == 15 and {len(line) for line in dst.lines} == {3}


def test_perp_set(w2):
    assert {w2.points[i] for i in geo.perp_set(w2, "a")} == set(geo.FANO_PENCIL)
    with pytest.raises(KeyError):
        geo.perp_set(w2, 99)


def test_hyperplane_kinds(w2):
    kinds = {}
    for h in geo.all_hyperplanes(w2):
        c = geo.classify_hyperplane(w2, h)
        kinds[c.kind] = kinds.get(c.kind, 0) + 1
    assert kinds == {"perp_set": 15, "grid": 10, "ovoid": 6}
    assert geo.classify_hyperplane(w2, geo.MERMIN_SQUARE).grid_shape == (3, 3)
    assert geo.classify_hyperplane(w2, geo.FANO_PENCIL).reference == "a"
    assert not geo.classify_hyperplane(w2, ["1", "2"]).is_hyperplane
    assert not geo.classify_hyperplane(w2, w2.points).is_hyperplane


def test_exact_covers():
    subsets = {"A": [0, 1], "B": [2, 3], "C": [1, 2], "D": [0, 3], "E": [0]}
    covers = geo.exact_covers(range(4), subsets)
    assert sorted(map(sorted, covers)) == [["A", "B"], ["C", "D"]]
    assert len(geo.exact_covers(range(4), subsets, limit=1)) == 1
    assert geo.exact_covers(range(5), subsets) == []


def test_spreads_and_mubs(w2, p4):
    spreads = geo.find_spreads(w2)
    assert len(spreads) == 6
    for s in spreads:
        assert sorted(v for k in s for v in w2.lines[k]) == list(range(15))
        assert geo.mub_deviation(p4, [w2.lines[k] for k in s]) < 1e-8
    # two lines through a common point are not unbiased
    k1, k2 = w2.through[0][:2]
    assert geo.mub_deviation(p4, [w2.lines[k1], w2.lines[k2]]) > 0.1


def test_mermin(w2, p4):
    arr = geo.mermin_arrangement(w2, geo.MERMIN_SQUARE)
    assert arr == [["4", "8", "12"], ["9", "10", "5"], ["11", "6", "7"]]
    pol = geo.verify_polarization(p4, arr)
    assert pol.rows == (2, 2, 2) and pol.columns == (0, 0, 0)
    assert pol.contextual and pol.total == 2
    # dense oracle for the first row
    prod = np.eye(4)
    for lab in arr[0]:
        prod = prod @ p4.operator(lab).to_dense()
    assert np.allclose(prod, -np.eye(4))
    with pytest.raises(geo.NotAGridError):
        geo.mermin_arrangement(w2, geo.FANO_PENCIL[:4])
    with pytest.raises(geo.NotAGridError):
        geo.mermin_arrangement(w2, ["1", "2", "3", "a", "4", "5", "6", "b", "7"])
    with pytest.raises(ValueError):
        geo.verify_polarization(p4, [["4", "4", "12"], ["9", "10", "5"], ["11", "6", "7"]])
    with pytest.raises(ValueError):
        geo.verify_polarization(p4, [["1", "2", "3"], ["9", "10", "5"], ["11", "6", "7"]])


def test_entanglement(w2, p4):
    counts = {"entangled": 0, "unentangled": 0}
    for line in w2.lines:
        kind = geo.line_entanglement(p4, line)
        counts[kind] += 1
        ranks = set(geo.line_schmidt_ranks(p4, line))
        assert ranks == ({1} if kind == "unentangled" else {2})
    assert counts == {"entangled": 6, "unentangled": 9}
    with pytest.raises(ValueError):
        geo.line_entanglement(p4, [0, 1])


def test_product_label(p4):
    lab, k = geo.product_label(p4, "a", "c")
    assert lab == "b"
    dense = p4.operator("a").to_dense() @ p4.operator("c").to_dense()
    assert np.allclose(dense, 1j ** k * p4.operator("b").to_dense())
    assert geo.product_label(p4, "1", "1") == (None, 0)


@pytest.mark.parametrize("name", ["FP_CB", "BP_MS", "I_PG"])
def test_two_qubit_partitions(p4, name):
    rep = geo.verify_partition(p4, name)
    assert rep.ok, rep.as_text()
    assert rep.witness


def test_partition_errors(p4, p9):
    with pytest.raises(KeyError):
        geo.verify_partition(p4, "NOPE")
    with pytest.raises(geo.PartitionNotApplicable):
        geo.verify_partition(p9, "FP_CB")
    with pytest.raises(geo.PartitionNotApplicable):
        geo.verify_partition(p4, "QUTRIT_GRID")


def test_qutrit_mcs(p9):
    st = geo.enumerate_mcs(p9)
    assert st.line_names == tuple(geo.QUTRIT_MCS)
    for name, pts in geo.QUTRIT_MCS.items():
        assert st.line_points(st.line(name)) == sorted(pts.split(), key=p9.vertex)
    counts = {"entangled": 0, "unentangled": 0}
    for line in st.lines:
        kind = geo.line_entanglement(p9, line)
        counts[kind] += 1
        assert set(geo.line_schmidt_ranks(p9, line)) == ({1} if kind == "unentangled" else {3})
    assert counts == {"unentangled": 16, "entangled": 24}


def test_qutrit_dual(p9):
    st, w9, dst = geo.qutrit_dual(p9)
    assert G.spectrum(w9) == {-4: 15, 2: 24, 12: 1}
    assert G.is_strongly_regular(w9).as_tuple() == (40, 12, 2, 4)
    assert len(dst.lines) == 40 and {len(line) for line in dst.lines} == {4}
    assert geo.classify_hyperplane(dst, geo.QUTRIT_OVOID).kind == "ovoid"
    assert len(geo.ovoids_through(w9, w9.index("L1"))) == 9
    assert len(geo.find_spreads(st)) == 36


@pytest.mark.parametrize("name", ["QUTRIT_GRID", "QUTRIT_OVOID", "QUTRIT_PERP"])
def test_qutrit_partitions(p9, name):
    rep = geo.verify_partition(p9, name)
    assert rep.ok, rep.as_text()


def test_qutrit_perp_other_reference(p9):
    rep = geo.verify_partition(p9, "QUTRIT_PERP", reference="Z5")
    assert rep.ok
    ovoids = rep.witness["ovoids"]
    assert all("Z5" in o for o in ovoids)
    assert len(set(itertools.chain.from_iterable(ovoids))) == 28


def test_qutrit_perp_cover_contains_listed_ovoid(p9):
    rep = geo.verify_partition(p9, "QUTRIT_PERP", reference="L1")
    assert sorted(geo.QUTRIT_OVOID) in [sorted(o) for o in rep.witness["ovoids"]]
