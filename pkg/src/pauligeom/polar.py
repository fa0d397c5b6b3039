"""Counting formulas for symplectic polar spaces W(2N-1, q) and the
partial-geometry parameters they predict for N-qudit Pauli graphs."""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import graphs as G
from .pauli import is_prime
from .report import Report


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, q + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return False


def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return num // den


@dataclass(frozen=True)
class PolarSpaceParams:
    q: int
    N: int
    points: int
    generators: int
    spread_size: int  # |S|
    generator_size: int  # |G|, points on a generator
    non_perpendicular: int  # points not perpendicular to a given one


def polar_counts(q: int, N: int) -> PolarSpaceParams:
    if not _is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    if N < 1:
        raise ValueError(f"rank N={N} must be positive")
    points = _exact_div(q ** (2 * N) - 1, q - 1)
    generators = math.prod(q ** i + 1 for i in range(1, N + 1))
    return PolarSpaceParams(
        q, N, points, generators,
        spread_size=q ** N + 1,
        generator_size=_exact_div(q ** N - 1, q - 1),
        non_perpendicular=q ** (2 * N - 1),
    )


@dataclass(frozen=True)
class PartialGeometryParams:
    s: int
    t: int
    alpha: int
    v: int
    lines: int
    k: int
    lam: int
    mu: int
    r: int
    l: int
    f: int
    g: int
    # false when the SRG prediction is only a pseudo-geometric expectation
    established: bool = True

    @property
    def srg(self) -> tuple:
        return (self.v, self.k, self.lam, self.mu)


def predicted_pg(q: int, N: int) -> PartialGeometryParams:
    if not _is_prime_power(q) or N < 2:
        raise ValueError("need a prime power q and N >= 2")
    s = _exact_div(q * (q ** (N - 1) - 1), q - 1)
    t = q ** (N - 1)
    a = _exact_div(q ** (N - 1) - 1, q - 1)
    v = _exact_div((s + 1) * (s * t + a), a)
    lines = _exact_div((t + 1) * (s * t + a), a)
    k, lam, mu = s * (t + 1), s - 1 + t * (a - 1), a * (t + 1)
    r, l, f, g = G.srg_eigen_data(v, k, lam, mu)
    return PartialGeometryParams(s, t, a, v, lines, k, lam, mu, r, l, f, g, established=(q == 2))


def table_row(N: int) -> dict:
    """Invariants of the N-qubit Pauli graph as a flat dict (the q = 2 row)."""
    pg = predicted_pg(2, N)
    return {"v": pg.v, "L": pg.lines, "D": pg.k, "r": pg.r, "l": pg.l,
            "lambda": pg.lam, "mu": pg.mu, "s": pg.s, "t": pg.t, "alpha": pg.alpha}


def cross_validate(q: int, N: int, bundle, mcs: bool = True, spreads: bool = True) -> Report:
    """Compare a constructed Pauli graph with the polar-space predictions.

    MCS and spread checks build the incidence structure; pass ``mcs=False``
    (or ``spreads=False``) to skip them for large systems.
    """
    from .geometry import enumerate_mcs, find_spreads

    if (bundle.params.p, bundle.params.n) != (q, N):
        raise ValueError(f"bundle is for p={bundle.params.p}, n={bundle.params.n}, not q={q}, N={N}")
    if not is_prime(q):
        raise ValueError("cross-validation needs a prime q")
    g = bundle.graph
    counts = polar_counts(q, N)
    pred = predicted_pg(q, N)
    rep = Report(f"polar space W({2 * N - 1},{q})")
    rep.check("vertices", expected=counts.points * (q - 1), measured=g.v)
    deg = g.regular_degree()
    non_nbr = None if deg is None else g.v - 1 - deg
    if q == 2:
        rep.check("non-neighbours per vertex", expected=counts.non_perpendicular, measured=non_nbr)
        srg = G.is_strongly_regular(g)
        measured = None if srg is None else (srg.v, srg.k, srg.lam, srg.mu, srg.r, srg.l, srg.f, srg.g)
        rep.check("srg parameters and spectrum", expected=(pred.v, pred.k, pred.lam, pred.mu,
                                                           pred.r, pred.l, pred.f, pred.g), measured=measured)
        rep.check("degree identity D = v - 1 - 2^(2N-1)",
                  expected=g.v - 1 - 2 ** (2 * N - 1), measured=deg)
        rep.check("mu = r l + D", expected=pred.mu, measured=pred.r * pred.l + pred.k)
        rep.check("lambda = mu + r + l", expected=pred.lam, measured=pred.mu + pred.r + pred.l)
    else:
        # each projective point carries q - 1 operators, all commuting with one another
        rep.check("non-neighbours per vertex", expected=(q - 1) * counts.non_perpendicular, measured=non_nbr)
        srg = G.is_strongly_regular(g)
        rep.info("strongly regular", measured=srg is not None)
        rep.info("pseudo-geometric expectation only", expected=pred.srg)
    if mcs:
        structure = enumerate_mcs(bundle)
        rep.check("maximal commuting subsets = generators", expected=counts.generators,
                  measured=len(structure.lines))
        rep.check("operators per maximal commuting subset", expected={(q - 1) * counts.generator_size},
                  measured={len(line) for line in structure.lines})
        if spreads:
            found = find_spreads(structure, limit=1)
            rep.check("a spread exists", bool(found))
            if found:
                rep.check("lines in a spread", expected=counts.spread_size, measured=len(found[0]))
    return rep
