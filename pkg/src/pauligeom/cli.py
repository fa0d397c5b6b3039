"""Command-line interface: ``pauligeom <command> [options]``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import graphs as G
from . import geometry as geo
from . import rings
from .pauli import SystemParams
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "PAULIGEOM_THREADS"
MAX_DIM = 64


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int = 2
    n: int = 2
    format: str = "text"
    out: Optional[str] = None
    threads: int = 1
    limit: Optional[int] = None
    debug_oracle: bool = False
    suite: str = "all"
    ring: str = "M2Z2"
    subset: Optional[str] = None
    timings: bool = False

    def params(self) -> SystemParams:
        try:
            params = SystemParams(self.p, self.n)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if params.d > MAX_DIM:
            raise UsageError(f"dimension {params.d} exceeds {MAX_DIM}")
        return params

    def bundle(self) -> geo.PauliGraphBundle:
        return geo.build_pauli_graph(self.params(), check="full" if self.debug_oracle else "sample")


def _fmt_float(x: float) -> str:
    # tiny round-off values are not reproducible digit for digit
    return "<1e-12" if abs(x) < 1e-12 else f"{x:.3g}"


# --- commands -------------------------------------------------------------

def graph_invariants(g: G.LabeledGraph) -> dict:
    inv = {
        "v": g.v,
        "e": g.edge_count,
        "degree": g.regular_degree(),
        "spectrum": {str(k): m for k, m in sorted(G.spectrum(g).items())},
        "girth": G.girth(g),
    }
    if g.v <= 100:
        inv["vertex_connectivity"] = G.vertex_connectivity(g)
    if g.v <= 20:
        inv["chromatic_number"] = G.chromatic_number(g)
    return inv


def cmd_graph(cfg: RunConfig) -> tuple:
    b = cfg.bundle()
    g = b.graph
    inv = graph_invariants(g)
    if cfg.format == "json":
        doc = {
            "params": {"p": cfg.p, "n": cfg.n},
            "vertices": [{"id": i, "label": g.labels[i], "symplectic": list(b.indices[i].flat())}
                         for i in range(g.v)],
            "edges": [list(e) for e in g.edges()],
            "invariants": inv,
        }
        return _json(doc), EXIT_OK
    if cfg.format == "dot":
        lines = [f"graph P{b.params.d} {{"]
        lines += [f'  "{lab}";' for lab in g.labels]
        lines += [f'  "{g.labels[i]}" -- "{g.labels[j]}";' for i, j in g.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n", EXIT_OK
    out = [f"Pauli graph p={cfg.p} n={cfg.n}"]
    for k, v in inv.items():
        if k == "spectrum":
            v = str(G.Spectrum({int(a): m for a, m in v.items()}))
        out.append(f"  {k}: {v}")
    out.append("  vertices: " + " ".join(g.labels))
    return "\n".join(out) + "\n", EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple:
    if cfg.suite != "all" and cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    reports = run_suite(cfg.suite, threads=cfg.threads)
    ok = all(r.ok for r in reports)
    code = EXIT_OK if ok else EXIT_FAIL
    if cfg.format == "json":
        return _json({"suite": cfg.suite, "passed": ok,
                      "reports": [r.as_dict(cfg.timings) for r in reports]}), code
    text = "\n".join(r.as_text(cfg.timings) for r in reports)
    return text + f"\noverall: {'PASS' if ok else 'FAIL'}\n", code


def cmd_mcs(cfg: RunConfig) -> tuple:
    b = cfg.bundle()
    st = geo.enumerate_mcs(b)
    names = st.line_names[:cfg.limit] if cfg.limit else st.line_names
    rows = [{"name": n, "points": [str(x) for x in st.line_points(k)],
             "entanglement": geo.line_entanglement(b, st.lines[k])} for k, n in enumerate(names)]
    if cfg.format == "json":
        return _json({"params": {"p": cfg.p, "n": cfg.n}, "count": len(st.lines), "lines": rows}), EXIT_OK
    out = [f"{len(st.lines)} maximal commuting subsets"]
    out += [f"{r['name']}: {' '.join(r['points'])}  ({r['entanglement']})" for r in rows]
    return "\n".join(out) + "\n", EXIT_OK


def cmd_spreads(cfg: RunConfig) -> tuple:
    b = cfg.bundle()
    st = geo.enumerate_mcs(b)
    spreads = geo.find_spreads(st, limit=cfg.limit)
    rows = []
    for s in spreads:
        dev = geo.mub_deviation(b, [st.lines[k] for k in s])
        rows.append({"lines": [st.line_names[k] for k in s], "mub_deviation": _fmt_float(dev),
                     "unbiased": dev < 1e-8})
    ok = all(r["unbiased"] for r in rows)
    code = EXIT_OK if ok else EXIT_FAIL
    if cfg.format == "json":
        return _json({"params": {"p": cfg.p, "n": cfg.n}, "count": len(rows), "spreads": rows}), code
    out = [f"{len(rows)} spreads" + (f" (limit {cfg.limit})" if cfg.limit else "")]
    out += [f"{' '.join(r['lines'])}  deviation {r['mub_deviation']}" for r in rows]
    return "\n".join(out) + "\n", code


def cmd_hyperplanes(cfg: RunConfig) -> tuple:
    b = cfg.bundle()
    st = geo.enumerate_mcs(b)
    if cfg.subset:
        items = [x.strip() for x in cfg.subset.split(",") if x.strip()]
        # a subset of line names is read in the dual structure
        target = geo.dual_structure(st) if all(x in st.line_names for x in items) else st
        try:
            subsets = [tuple(target.point(x) for x in items)]
        except KeyError as e:
            raise UsageError(f"unknown point {e.args[0]}") from None
    else:
        if len(st.points) > 20:
            raise UsageError("pass --subset for structures with more than 20 points")
        target = st
        subsets = geo.all_hyperplanes(st)
    rows = []
    for s in subsets:
        c = geo.classify_hyperplane(target, s)
        row = {"points": [str(target.points[i]) for i in s], "kind": c.kind}
        if c.reference:
            row["reference"] = c.reference
        if c.grid_shape:
            row["grid"] = list(c.grid_shape)
        rows.append(row)
    if cfg.limit:
        rows = rows[:cfg.limit]
    if cfg.format == "json":
        return _json({"params": {"p": cfg.p, "n": cfg.n}, "hyperplanes": rows}), EXIT_OK
    out = []
    if not cfg.subset:
        counts: dict = {}
        for r in rows:
            counts[r["kind"]] = counts.get(r["kind"], 0) + 1
        out.append(", ".join(f"{k}: {v}" for k, v in sorted(counts.items())))
    for r in rows:
        extra = f" at {r['reference']}" if "reference" in r else ""
        extra += f" {r['grid'][0]}x{r['grid'][1]}" if "grid" in r else ""
        out.append(f"{r['kind']}{extra}: {' '.join(r['points'])}")
    return "\n".join(out) + "\n", EXIT_OK


def cmd_mermin(cfg: RunConfig) -> tuple:
    b = cfg.bundle()
    if (cfg.p, cfg.n) != (2, 2):
        raise UsageError("the Mermin square is defined for two qubits")
    st = geo.enumerate_mcs(b)
    points = cfg.subset.split(",") if cfg.subset else geo.MERMIN_SQUARE
    try:
        arr = geo.mermin_arrangement(st, [x.strip() for x in points])
    except (geo.NotAGridError, KeyError) as e:
        raise UsageError(str(e)) from None
    pol = geo.verify_polarization(b, arr)
    quarter = pol.modulus // 4

    def sign(k):
        return {0: 1, 2 * quarter: -1}.get(k, f"i^{k // quarter}")

    doc = {"arrangement": arr, "row_products": [sign(k) for k in pol.rows],
           "column_products": [sign(k) for k in pol.columns], "contextual": pol.contextual}
    if cfg.format == "json":
        return _json(doc), EXIT_OK
    out = ["  ".join(f"{x:>3}" for x in row) + f"   row product {sign(k):+d}I" for row, k in zip(arr, pol.rows)]
    out.append("column products: " + " ".join(f"{s:+d}I" for s in doc["column_products"]))
    out.append(f"all six products multiply to {'-1 (contextual)' if pol.contextual else '+1'}")
    return "\n".join(out) + "\n", EXIT_OK


def cmd_ringline(cfg: RunConfig) -> tuple:
    try:
        ring = rings.builtin_ring(cfg.ring)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    line = rings.projective_line(ring)
    doc = {
        "ring": ring.name,
        "units": [ring.labels[u] for u in ring.units],
        "zero_divisors": [ring.labels[z] for z in ring.zero_divisors],
        "points": line.labels,
        "neighbor_pairs": [[line.label(i), line.label(j)] for i, j in line.neighbor_graph().edges()],
    }
    if ring.name == "M2Z2":
        dist, nbr = rings.pair_symmetric_subsets(line, ("1'", "0'"), ("0'", "1'"))
        doc["distant_to_both"] = [line.label(x) for x in dist]
        doc["neighbor_to_both"] = [line.label(x) for x in nbr]
    if cfg.format == "json":
        return _json(doc), EXIT_OK
    out = [f"projective line over {ring.name}: {len(line)} points",
           "units: " + " ".join(doc["units"]),
           "zero divisors: " + " ".join(doc["zero_divisors"]),
           "points: " + " ".join(doc["points"]),
           f"neighbour pairs: {len(doc['neighbor_pairs'])}"]
    for key in ("distant_to_both", "neighbor_to_both"):
        if key in doc:
            out.append(f"{key.replace('_', ' ')} of (1',0') and (0',1'): " + " ".join(doc[key]))
    return "\n".join(out) + "\n", EXIT_OK


COMMANDS = {
    "graph": cmd_graph, "verify": cmd_verify, "mcs": cmd_mcs, "spreads": cmd_spreads,
    "hyperplanes": cmd_hyperplanes, "mermin": cmd_mermin, "ringline": cmd_ringline,
}


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# --- argument handling ----------------------------------------------------

def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="qudit dimension (prime)")
    common.add_argument("--n", type=int, default=2, help="number of qudits")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--threads", type=int, help=f"worker threads (default: ${THREADS_ENV} or 1)")
    common.add_argument("--limit", type=int, help="cap on listed or searched items")
    common.add_argument("--debug-oracle", action="store_true",
                        help="cross-check every adjacency against monomial matrices")
    common.add_argument("--timings", action="store_true", help="include wall times in reports")

    parser = argparse.ArgumentParser(prog="pauligeom", description="Pauli graphs and their finite geometries")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("graph", parents=[common], help="build and export a Pauli graph")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", default="all", help="two_qubit, two_qutrit, ring_lines, polar, oracle or all")
    sub.add_parser("mcs", parents=[common], help="list maximal commuting subsets")
    sub.add_parser("spreads", parents=[common], help="list spreads with their MUB deviation")
    h = sub.add_parser("hyperplanes", parents=[common], help="classify geometric hyperplanes")
    h.add_argument("--subset", help="comma-separated point labels (or line names for the dual)")
    m = sub.add_parser("mermin", parents=[common], help="Mermin square arrangement and phases")
    m.add_argument("--subset", help="comma-separated labels of the nine operators")
    r = sub.add_parser("ringline", parents=[common], help="projective line over a small ring")
    r.add_argument("--ring", default="M2Z2", help="Z2, F4, Z2x_sq, Z2xZ2 or M2Z2")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        threads = args.threads if args.threads is not None else _default_threads()
        if threads < 1:
            raise UsageError("--threads must be positive")
        if args.limit is not None and args.limit < 1:
            raise UsageError("--limit must be positive")
        if args.format == "dot" and args.command != "graph":
            raise UsageError("dot output is only available for the graph command")
        cfg = RunConfig(
            command=args.command, p=args.p, n=args.n, format=args.format, out=args.out,
            threads=threads, limit=args.limit, debug_oracle=args.debug_oracle,
            suite=getattr(args, "suite", "all"), ring=getattr(args, "ring", "M2Z2"),
            subset=getattr(args, "subset", None), timings=args.timings,
        )
        if cfg.command != "ringline" and cfg.command != "verify":
            cfg.params()
        text, code = COMMANDS[cfg.command](cfg)
    except UsageError as e:
        print(f"pauligeom: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
