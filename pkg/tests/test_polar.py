import pytest

from pauligeom import graphs as G
from pauligeom import polar
from pauligeom.geometry import build_pauli_graph
from pauligeom.pauli import SystemParams

TABLE = {
    2: {"v": 15, "L": 15, "D": 6, "r": 1, "l": -3, "lambda": 1, "mu": 3, "s": 2, "t": 2, "alpha": 1},
    3: {"v": 63, "L": 45, "D": 30, "r": 3, "l": -5, "lambda": 13, "mu": 15, "s": 6, "t": 4, "alpha": 3},
    4: {"v": 255, "L": 153, "D": 126, "r": 7, "l": -9, "lambda": 61, "mu": 63, "s": 14, "t": 8, "alpha": 7},
}


@pytest.mark.parametrize("N", [2, 3, 4])
def test_table_rows(N):
    assert polar.table_row(N) == TABLE[N]


def test_polar_counts():
    c = polar.polar_counts(2, 2)
    assert (c.points, c.generators, c.spread_size, c.generator_size, c.non_perpendicular) == (15, 15, 5, 3, 8)
    assert polar.polar_counts(2, 3).generators == 135
    assert polar.polar_counts(2, 4).points == 255
    assert polar.polar_counts(3, 2).points == 40
    assert polar.polar_counts(4, 2).points == 85  # prime power accepted
    with pytest.raises(ValueError):
        polar.polar_counts(6, 2)
    with pytest.raises(ValueError):
        polar.polar_counts(2, 0)


@pytest.mark.parametrize("N", range(2, 9))
def test_caption_identities(N):
    pg = polar.predicted_pg(2, N)
    assert pg.mu == pg.alpha * (pg.t + 1) == pg.r * pg.l + pg.k
    assert pg.lam == pg.s - 1 + pg.t * (pg.alpha - 1) == pg.mu + pg.r + pg.l
    assert pg.v == 4 ** N - 1
    assert pg.k == pg.v - 1 - 2 ** (2 * N - 1)
    assert pg.f + pg.g == pg.v - 1
    assert pg.k + pg.f * pg.r + pg.g * pg.l == 0  # trace of the adjacency matrix
    assert pg.lines * (pg.s + 1) == pg.v * (pg.t + 1)


@pytest.mark.parametrize("q,N", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_generators_match_maximal_cliques(q, N):
    g = build_pauli_graph(SystemParams(q, N)).graph
    c = polar.polar_counts(q, N)
    cliques = G.max_cliques(g)
    assert len(cliques) == c.generators
    assert {len(k) for k in cliques} == {(q - 1) * c.generator_size}


def test_odd_q_flagged():
    pg = polar.predicted_pg(3, 2)
    assert not pg.established and pg.srg == (40, 12, 2, 4)
    with pytest.raises(ValueError):
        polar.predicted_pg(2, 1)


@pytest.mark.parametrize("q,N", [(2, 2), (2, 3), (3, 2)])
def test_cross_validate(q, N):
    rep = polar.cross_validate(q, N, build_pauli_graph(SystemParams(q, N)))
    assert rep.ok, rep.as_text()


def test_cross_validate_large():
    b = build_pauli_graph(SystemParams(2, 4))
    rep = polar.cross_validate(2, 4, b, mcs=False)
    assert rep.ok, rep.as_text()
    assert G.spectrum(b.graph) == {-9: 119, 7: 135, 126: 1}


def test_cross_validate_mismatch():
    with pytest.raises(ValueError):
        polar.cross_validate(2, 3, build_pauli_graph(SystemParams(2, 2)))
