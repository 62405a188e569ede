"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 budget exceeded, 4 verification
failure, 5 malformed structural input.  All exact output is emitted as
JSON with rationals rendered "p/q"; --threads never changes a byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import catalog, clt as clt_mod, dualchar, oracle as oracle_mod, penner, series, sprinkle
from .errors import BudgetError, StructuralError, UsageError, VerificationError
from .graphs import graph_from_json, topology
from .parallel import pmap

EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4
EXIT_STRUCTURAL = 5


def _env_budget(name: str, fallback: int) -> int:
    return int(os.environ.get(name, fallback))


@dataclass
class Budgets:
    half_edges: int = field(default_factory=lambda: _env_budget(
        "MOBEX_HALF_EDGE_BUDGET", catalog.HALF_EDGE_BUDGET))
    mu_assignments: int = field(default_factory=lambda: _env_budget(
        "MOBEX_MU_BUDGET", sprinkle.MU_ASSIGNMENT_BUDGET))
    oracle_degree: int = field(default_factory=lambda: _env_budget(
        "MOBEX_ORACLE_BUDGET", oracle_mod.ORACLE_DEGREE_BUDGET))


@dataclass
class RunConfig:
    subcommand: str
    format: str = "json"
    threads: int = 1
    budgets: Budgets = field(default_factory=Budgets)
    options: dict = field(default_factory=dict)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("not a rational: %r" % text) from exc


def _parse_profile(text: str) -> dict:
    profile = {}
    try:
        for chunk in text.split(","):
            j, count = chunk.split(":")
            profile[int(j)] = profile.get(int(j), 0) + int(count)
    except ValueError as exc:
        raise UsageError("profile must look like '3:2,4:1'") from exc
    return profile


def _emit(data, fmt: str, table_rows=None) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    elif fmt == "csv" and table_rows is not None:
        header, rows = table_rows
        print(",".join(header))
        for row in rows:
            print(",".join(str(x) for x in row))
    elif fmt == "table" and table_rows is not None:
        header, rows = table_rows
        widths = [max(len(str(x)) for x in [h] + [r[i] for r in rows] or [h])
                  for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))
    else:
        print(json.dumps(data, indent=2, sort_keys=True))


def _topology_json(topo) -> dict:
    return {
        "v": topo.v, "e": topo.e, "f": topo.f,
        "v_profile": {str(j): c for j, c in topo.v_profile},
        "f_profile": {str(j): c for j, c in topo.f_profile},
        "chi": topo.chi, "orientable": topo.natural == 1,
        "sigma": topo.sigma, "genus": topo.genus,
    }


# -- subcommands -------------------------------------------------------------------

def _cmd_graphs(config: RunConfig) -> int:
    opts = config.options
    entries = catalog.enumerate_graphs(
        _parse_profile(opts["profile"]), connected_only=opts["connected"],
        half_edge_budget=config.budgets.half_edges)
    data = []
    rows = []
    for entry in entries:
        record = {
            "code": entry.code.decode(),
            "aut_moebius": entry.aut_moebius,
            "aut_ribbon": entry.aut_ribbon,
            "topology": _topology_json(entry.topology),
            "rotations": [list(r) for r in entry.graph.rotations],
            "edges": [list(e) for e in entry.graph.edges],
            "twists": [bool(t) for t in entry.graph.twists],
        }
        data.append(record)
        topo = entry.topology
        rows.append([topo.v, topo.e, topo.f, topo.chi,
                     "yes" if topo.natural == 1 else "no",
                     entry.aut_moebius, entry.aut_ribbon or "-"])
    _emit(data, config.format,
          (["v", "e", "f", "chi", "orientable", "aut", "aut_ribbon"], rows))
    return 0


def _expand_worker(args):
    monomial, tag, beta, budget = args
    total = None
    for entry in catalog.enumerate_graphs(list(monomial), connected_only=True,
                                          half_edge_budget=budget):
        weight = series._WEIGHTS[tag](entry.topology, beta) * Fraction(1, entry.aut_moebius)
        total = weight if total is None else total + weight
    return monomial, (total.to_json() if total else None)


def _cmd_expand(config: RunConfig) -> int:
    opts = config.options
    tag = opts["tag"]
    beta = series._validate_tag(tag, opts["beta"])
    include_t1, include_t2 = opts["t1"], opts["t2"]
    if tag == "gse-penner":
        include_t1 = include_t2 = False

    def allowed(j: int) -> bool:
        return not ((j == 1 and not include_t1) or (j == 2 and not include_t2))

    monomials = list(series.iter_monomials(opts["degree"], allowed=allowed))
    results = pmap(_expand_worker,
                   [(m, tag, beta, config.budgets.half_edges) for m in monomials],
                   config.threads)
    data = [{"monomial": list(m), "coeff": coeff}
            for m, coeff in results if coeff]
    rows = [[" ".join("t%d" % j for j in m), json.dumps(c, sort_keys=True)]
            for m, c in results if c]
    _emit(data, config.format, (["monomial", "coefficient"], rows))
    return 0


def _cmd_mu(config: RunConfig) -> int:
    opts = config.options
    with open(opts["graph"]) as handle:
        graph = graph_from_json(handle.read())
    report = sprinkle.mu_report(graph, opts["beta"],
                                assignment_budget=config.budgets.mu_assignments)
    data = {
        "graph_id": report.graph_id,
        "beta": report.beta,
        "mu_bruteforce": report.mu_bruteforce,
        "mu_closed": report.mu_closed,
        "configurations_counted": report.configurations_counted,
        "topology": _topology_json(topology(graph)),
        "agree": report.mu_bruteforce == report.mu_closed,
    }
    _emit(data, config.format)
    if report.mu_bruteforce != report.mu_closed:
        raise VerificationError("mu bruteforce disagrees with the closed form",
                                payload=data)
    return 0


def _cmd_oracle(config: RunConfig) -> int:
    opts = config.options
    if opts.get("mc"):
        powers = tuple(int(x) for x in opts["powers"].split(","))
        mean, err = oracle_mod.mc_estimate(opts["beta"], opts["n"], powers,
                                           opts["samples"], opts["seed"],
                                           scale=opts["scale"])
        _emit({"mean": mean, "stderr": err, "beta": opts["beta"], "n": opts["n"],
               "powers": list(powers), "samples": opts["samples"],
               "seed": opts["seed"], "scale": str(opts["scale"])}, config.format)
        return 0
    reports = oracle_mod.oracle_compare(
        opts["beta"], opts["tag"], opts["degree"], [opts["n"]],
        budget=config.budgets.oracle_degree)
    data = [{"monomial": list(r.monomial), "n": r.n,
             "graph_sum": str(r.predicted), "oracle": str(r.exact),
             "equal": r.equal} for r in reports]
    rows = [[" ".join("t%d" % j for j in r.monomial), r.n,
             str(r.predicted), str(r.exact), r.equal] for r in reports]
    _emit(data, config.format, (["monomial", "n", "graph_sum", "oracle", "equal"], rows))
    return 0


def _cmd_penner(config: RunConfig) -> int:
    opts = config.options
    if opts.get("euler"):
        value = penner.real_moduli_euler(opts["q"], opts["n"])
        _emit({"q": opts["q"], "n": opts["n"], "euler_characteristic": str(value)},
              config.format)
        return 0
    model = opts["model"]
    order = opts["order"]
    if model == "K":
        zs = penner.K_series(order, opts["alpha"])
    elif model == "J":
        zs = penner.J_series(order, opts["gamma"])
    elif model == "I":
        zs = penner.I_series(order, _parse_fraction(opts["r"]))
    else:
        raise UsageError("model must be K, J or I")
    _emit(zs.to_json(), config.format,
          (["z^m", "coefficient"],
           [["z^%d" % m, json.dumps(zs.coeffs[m].to_json(), sort_keys=True)]
            for m in sorted(zs.coeffs)]))
    return 0


def _cmd_charpoly(config: RunConfig) -> int:
    opts = config.options
    if opts.get("verify"):
        report = dualchar.verify_polynomial_identity(opts["N"], opts["k"], opts["which"])
        _emit({"which": report.which, "N": report.n, "k": report.k,
               "equal": report.equal,
               "lhs": [[list(key), str(val)] for key, val in report.lhs],
               "rhs": [[list(key), str(val)] for key, val in report.rhs]},
              config.format)
        return 0
    side, ensemble = opts["side"], opts["ensemble"]
    if side == "lhs":
        lam = dualchar.charpoly_lhs(ensemble, opts["degree"],
                                    half_edge_budget=config.budgets.half_edges)
    else:
        lam = dualchar.charpoly_rhs(ensemble, opts["degree"],
                                    half_edge_budget=config.budgets.half_edges)
    _emit(lam.to_json(), config.format,
          (["monomial", "coefficient"],
           [[" ".join("tau%d" % j for j in key), json.dumps(val.to_json(), sort_keys=True)]
            for key, val in sorted(lam.terms.items())]))
    return 0


def _cmd_clt(config: RunConfig) -> int:
    opts = config.options
    result = clt_mod.clt_limit(opts["alpha"], opts["jmax"],
                               half_edge_budget=config.budgets.half_edges)
    data = {"alpha": str(result.alpha),
            "quadratic_form": [[list(pair), str(val)]
                               for pair, val in result.quadratic_form]}
    if opts["verify"]:
        report = clt_mod.verify_clt(opts["alpha"], opts["jmax"], opts["degree"],
                                    half_edge_budget=config.budgets.half_edges)
        data["verified"] = report.equal
        data["matched_pairs"] = report.matched
    _emit(data, config.format,
          (["j1 j2", "coefficient"],
           [["%d %d" % pair, str(val)] for pair, val in result.quadratic_form]))
    return 0


def _cmd_duality(config: RunConfig) -> int:
    opts = config.options
    inv = series.expand_logZ("invariant", opts["degree"],
                             half_edge_budget=config.budgets.half_edges)
    dual = series.apply_duality(inv)
    involution = series.apply_duality(dual) == inv
    pointwise = dual == inv
    alpha = opts["alpha"]
    reduced_equal = dual.reduce_root(alpha) == inv.reduce_root(alpha)
    data = {"alpha": str(alpha), "degree": opts["degree"],
            "involution_holds": involution,
            "self_dual_graph_by_graph": pointwise,
            "reduced_at_alpha_equal": reduced_equal,
            "monomials": len(inv.terms)}
    _emit(data, config.format)
    if not (involution and pointwise and reduced_equal):
        raise VerificationError("duality check failed", payload=data)
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table", "csv"], default="json")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--half-edge-budget", type=int, default=None)
    common.add_argument("--mu-budget", type=int, default=None)
    common.add_argument("--oracle-budget", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="mobex",
        description="Exact Moebius-graph expansions of GOE/GUE/GSE matrix integrals")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("graphs", help="enumerate graph classes for a valence profile")
    p.add_argument("--profile", required=True, help="e.g. 3:2,4:1")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--connected", dest="connected", action="store_true", default=True)
    group.add_argument("--all", dest="connected", action="store_false")

    p = add_parser("expand", help="graph-sum expansion of log Z")
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--tag", choices=list(series.TAGS), default="master")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--no-t1", dest="t1", action="store_false", default=True)
    p.add_argument("--no-t2", dest="t2", action="store_false", default=True)

    p = add_parser("mu", help="signed unit-configuration count of a graph")
    p.add_argument("--graph", required=True, help="path to graph JSON")
    p.add_argument("--beta", type=int, required=True)

    p = add_parser("oracle", help="eigenvalue-integral cross-check")
    p.add_argument("mode", nargs="?", choices=["mc"], default=None)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tag", choices=list(series.TAGS), default="master")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--powers", default="2")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--scale", default="1/4")

    p = add_parser("penner", help="Penner closed forms and moduli Euler numbers")
    p.add_argument("mode", nargs="?", choices=["euler"], default=None)
    p.add_argument("--model", choices=["K", "J", "I"], default="K")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--gamma", type=int, default=1)
    p.add_argument("--r", default="1")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--n", type=int, default=2)

    p = add_parser("charpoly", help="characteristic-polynomial duality series")
    p.add_argument("mode", nargs="?", choices=["verify"], default=None)
    p.add_argument("--ensemble", choices=["gue", "goe", "gse"], default="gue")
    p.add_argument("--side", choices=["lhs", "rhs"], default="lhs")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--which", choices=["BHC", "BHQ"], default="BHC")
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--k", type=int, default=1)

    p = add_parser("clt", help="central-limit quadratic form")
    p.add_argument("--alpha", default="1")
    p.add_argument("--jmax", type=int, default=4)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--max-degree", type=int, default=6)

    p = add_parser("duality", help="alpha -> 1/alpha, N -> -alpha N involution check")
    p.add_argument("--alpha", default="2")
    p.add_argument("--max-degree", type=int, default=6)

    return parser


_DISPATCH = {
    "graphs": _cmd_graphs,
    "expand": _cmd_expand,
    "mu": _cmd_mu,
    "oracle": _cmd_oracle,
    "penner": _cmd_penner,
    "charpoly": _cmd_charpoly,
    "clt": _cmd_clt,
    "duality": _cmd_duality,
}


def _make_config(args: argparse.Namespace) -> RunConfig:
    budgets = Budgets()
    if args.half_edge_budget is not None:
        budgets.half_edges = args.half_edge_budget
    if args.mu_budget is not None:
        budgets.mu_assignments = args.mu_budget
    if args.oracle_budget is not None:
        budgets.oracle_degree = args.oracle_budget

    options = {}
    if args.subcommand == "graphs":
        options = {"profile": args.profile, "connected": args.connected}
    elif args.subcommand == "expand":
        options = {"beta": args.beta, "tag": args.tag, "degree": args.max_degree,
                   "t1": args.t1, "t2": args.t2}
    elif args.subcommand == "mu":
        options = {"graph": args.graph, "beta": args.beta}
    elif args.subcommand == "oracle":
        options = {"mc": args.mode == "mc", "beta": args.beta, "n": args.n,
                   "tag": args.tag, "degree": args.max_degree,
                   "powers": args.powers, "samples": args.samples,
                   "seed": args.seed, "scale": _parse_fraction(args.scale)}
    elif args.subcommand == "penner":
        options = {"euler": args.mode == "euler", "model": args.model,
                   "alpha": args.alpha, "gamma": args.gamma, "r": args.r,
                   "order": args.order, "q": args.q, "n": args.n}
    elif args.subcommand == "charpoly":
        options = {"verify": args.mode == "verify", "ensemble": args.ensemble,
                   "side": args.side, "degree": args.max_degree,
                   "which": args.which, "N": args.N, "k": args.k}
    elif args.subcommand == "clt":
        options = {"alpha": _parse_fraction(args.alpha), "jmax": args.jmax,
                   "verify": args.verify, "degree": args.max_degree}
    elif args.subcommand == "duality":
        options = {"alpha": _parse_fraction(args.alpha), "degree": args.max_degree}
    return RunConfig(subcommand=args.subcommand, format=args.format,
                     threads=args.threads, budgets=budgets, options=options)


def run(config: RunConfig) -> int:
    return _DISPATCH[config.subcommand](config)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _make_config(args)
        return run(config)
    except UsageError as exc:
        print(json.dumps({"error": str(exc), "code": EXIT_USAGE}), file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(json.dumps({"error": str(exc), "code": EXIT_BUDGET}), file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(json.dumps({"error": str(exc), "code": EXIT_VERIFY}), file=sys.stderr)
        return EXIT_VERIFY
    except StructuralError as exc:
        print(json.dumps({"error": str(exc), "code": EXIT_STRUCTURAL}), file=sys.stderr)
        return EXIT_STRUCTURAL
    except OSError as exc:
        print(json.dumps({"error": str(exc), "code": EXIT_STRUCTURAL}), file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
