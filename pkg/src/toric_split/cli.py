"""Command-line front end.

Exit codes: 0 success or verified, 1 verification failed, 2 input error,
3 degree bound insufficient.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .binomials import DEGREVLEX, MonomialOrder, format_monomial
from .graphcore import Graph, GlueSpec, GraphError, find_path_splittings, glue
from .resolve import (
    BoundTooSmall,
    GradingUnavailable,
    betti_graded,
    betti_multigraded,
    hilbert_data,
    poly_str,
    proj_dim,
    regularity,
)
from .splitkit import (
    CycleTooShort,
    HypothesisFailed,
    NoEdgeSplitting,
    PreconditionViolated,
    TooManyNonBipartite,
    cycle_fan_glue,
    cycle_glue_invariants,
    edge_split_verify,
    graph_table,
    kunneth_betti,
    mapping_cone_betti,
    path_split_verify,
    tensor_betti_check,
    two_binomial_membership,
)
from .toricgen import toric_ideal_of_graph

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON ({e.msg} at line {e.lineno})") from None


def _read_graph(path: str) -> Graph:
    try:
        return Graph.from_dict(_read_json(path))
    except GraphError as e:
        raise InputError(f"{path}: {e}") from None


def _order(name: str) -> MonomialOrder:
    return DEGREVLEX if name == "degrevlex" else MonomialOrder("lex")


# --------------------------------------------------------------------------


def cmd_ideal(args) -> int:
    G = _read_graph(args.graph)
    T = toric_ideal_of_graph(G, _order(args.order))
    names = T.names()
    if args.format == "json":
        print(json.dumps({
            "order": args.order,
            "nvars": T.nvars,
            "generators": [b.format(names) for b in T.generators()],
            "edges": {n: list(map(str, e)) for n, e in zip(names, G.edges)},
        }, indent=1))
    elif args.format == "csv":
        print("lead,trail")
        for b in T.generators():
            print(f"{format_monomial(b.plus, names)},{format_monomial(b.minus, names)}")
    else:
        if not T.generators():
            print("(zero ideal)")
        for b in T.generators():
            print(b.format(names))
    return EXIT_OK


def _print_table(T, fmt):
    if fmt == "json":
        print(T.to_json())
    elif fmt == "csv":
        print(T.to_csv(), end="")
    else:
        print(T.to_text())


def cmd_betti(args) -> int:
    G = _read_graph(args.graph)
    I = toric_ideal_of_graph(G, _order(args.order))
    try:
        M = betti_multigraded(I, args.max_degree, args.backend)
        code = EXIT_OK
    except BoundTooSmall as e:
        print(f"error: {e}", file=sys.stderr)
        if e.table is None:
            return EXIT_BOUND
        M, code = e.table, EXIT_BOUND
    _print_table(M if args.multigraded else betti_graded(M, 2), args.format)
    return code


def _certificate_exit(certs) -> int:
    relevant = [c for c in certs if c.hypotheses_hold]
    if relevant and all(c.verified for c in relevant):
        return EXIT_OK
    return EXIT_FAIL


def _print_certs(certs, theorem, fmt):
    if fmt == "json":
        from .splitkit import report_json

        print(report_json(certs, theorem))
        return
    if not certs:
        print(f"{theorem}: no splitting found")
    for c in certs:
        status = "PASS" if c.verified else "FAIL"
        sep = "-".join(map(str, c.separator)) if c.separator else ""
        line = f"{status} {c.kind}"
        if sep:
            line += f" along {sep}"
        hyp = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in c.hypotheses.items())
        line += f" [{hyp}]"
        d = c.to_dict()
        if d["saturating_monomial"] is not None:
            line += f" saturating by {d['saturating_monomial']}"
        if d["extra"] is not None:
            line += f" extra {d['extra']}"
        print(line)
        for msg in c.diagnostics:
            print(f"    {msg}")


def _load_fan(path):
    spec = _read_json(path)
    try:
        C = int(spec["cycle_length"])
        att = []
        for a in spec["attachments"]:
            att.append((Graph.from_dict(a["graph"]), tuple(a["edge"])))
        return C, att, spec.get("positions")
    except (KeyError, TypeError, ValueError, GraphError) as e:
        raise InputError(f"{path}: bad cycle-fan spec ({e})") from None


def cmd_verify(args) -> int:
    th = args.theorem
    if th in ("edge", "path"):
        G = _read_graph(args.graph)
        certs = edge_split_verify(G) if th == "edge" else path_split_verify(G, args.path_length)
        _print_certs(certs, th, args.format)
        return _certificate_exit(certs)
    if th == "tensor":
        G = _read_graph(args.graph)
        try:
            rep = tensor_betti_check(G, args.backend)
        except NoEdgeSplitting as e:
            direct = graph_table(G, args.backend)
            if args.format == "json":
                print(json.dumps({"equal": False, "reason": str(e), "direct_totals": direct.totals()}))
            else:
                print(f"FAIL tensor: {e}")
                print(direct.to_text())
            return EXIT_FAIL
        if args.format == "json":
            print(json.dumps(rep.to_dict(), indent=1))
        else:
            print(f"{'PASS' if rep.equal else 'FAIL'} tensor along {'-'.join(map(str, rep.separator))}")
            print("direct:")
            print(rep.direct.to_text())
            print("convolved:")
            print(rep.convolved.to_text())
        return EXIT_OK if rep.equal else EXIT_FAIL
    # cycle-fan and invariants read a cycle-fan spec
    C, att, pos = _load_fan(args.graph)
    try:
        H, cert = cycle_fan_glue(C, att, pos)
    except (TooManyNonBipartite, CycleTooShort, HypothesisFailed, KeyError, ValueError) as e:
        print(f"FAIL {th}: {type(e).__name__}: {e}")
        return EXIT_FAIL
    if th == "cycle-fan":
        _print_certs([cert], th, args.format)
        return EXIT_OK if cert.verified else EXIT_FAIL
    d = C // 2
    tables = [graph_table(G, args.backend) for G, _ in att]
    parts = [(hilbert_data(toric_ideal_of_graph(G)), T) for (G, _), T in zip(att, tables)]
    h, reg, pd = cycle_glue_invariants(parts, d)
    I = toric_ideal_of_graph(H)
    direct = graph_table(H, args.backend)
    formula = mapping_cone_betti(kunneth_betti(tables) if tables else graph_table(Graph((), ())), d)
    got = {
        "h_polynomial": [poly_str(h), poly_str(hilbert_data(I).h_polynomial)],
        "regularity": [reg, regularity(direct)],
        "proj_dim": [pd, proj_dim(direct)],
        "betti_table": [formula.totals(), direct.totals()],
    }
    ok = all(a == b for a, b in got.values()) and formula == direct
    if args.format == "json":
        print(json.dumps({"verified": ok, "formula_vs_direct": got}, indent=1))
    else:
        for k, (a, b) in got.items():
            print(f"{'PASS' if a == b else 'FAIL'} {k}: formula {a} direct {b}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_glue(args) -> int:
    spec = _read_json(args.spec)
    try:
        g1, g2 = Graph.from_dict(spec["g1"]), Graph.from_dict(spec["g2"])
        gs = GlueSpec(g1, g2, tuple(spec["h1"]), tuple(spec["h2"]), dict(spec["iso"]))
        res = glue(gs)
    except (KeyError, TypeError) as e:
        raise InputError(f"{args.spec}: bad glue spec ({e})") from None
    except GraphError as e:
        raise InputError(f"{args.spec}: {e}") from None
    text = res.graph.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_split(args) -> int:
    G = _read_graph(args.graph)
    sps = find_path_splittings(G, args.path_length)
    if args.format == "json":
        print(json.dumps([
            {"path": list(map(str, s.path)), "g1": s.g1.to_dict(), "g2": s.g2.to_dict(), "components": s.n_components}
            for s in sps
        ], indent=1))
    else:
        for s in sps:
            print(f"path {'-'.join(map(str, s.path))} | G1 {' '.join(map(str, s.g1.vertices))}"
                  f" | G2 {' '.join(map(str, s.g2.vertices))}")
    return EXIT_OK


def _random_pair(rng, n):
    while True:
        a = [rng.randint(-2, 2) for _ in range(n)]
        b = [rng.randint(-2, 2) for _ in range(n)]
        try:
            return a, b, two_binomial_membership(a, b)
        except PreconditionViolated:
            continue


def cmd_lemma(args) -> int:
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.count):
        a, b, (crit, orac) = _random_pair(rng, rng.randint(3, args.nvars))
        if crit != orac:
            bad += 1
            print(f"discrepancy: alpha={a} beta={b} criterion={crit} oracle={orac}")
    print(f"{'PASS' if not bad else 'FAIL'} {args.count} pairs, {bad} discrepancies")
    return EXIT_OK if not bad else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    common.add_argument("--backend", choices=["divisor-complex", "koszul"], default="divisor-complex")
    common.add_argument("--max-degree", type=int, default=None, metavar="N",
                        help="degree bound for Betti numbers (default: degree of the K-polynomial)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="toric-split", description="Toric ideals of graphs and their splittings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ideal", parents=[common], help="reduced Gröbner basis of I_G")
    s.add_argument("graph")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("betti", parents=[common], help="graded Betti table of K[E(G)]/I_G")
    s.add_argument("graph")
    s.add_argument("--multigraded", action="store_true")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("verify", parents=[common], help="check a splitting theorem on an input")
    s.add_argument("graph", help="graph JSON, or cycle-fan spec JSON for cycle-fan/invariants")
    s.add_argument("--theorem", choices=["edge", "path", "cycle-fan", "tensor", "invariants"], required=True)
    s.add_argument("--path-length", type=int, default=2)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("glue", parents=[common], help="glue two graphs from a spec file")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("split", parents=[common], help="list splittings along induced paths")
    s.add_argument("graph")
    s.add_argument("--path-length", type=int, default=1)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("lemma", parents=[common], help="random check of the two-binomial membership criterion")
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--nvars", type=int, default=6)
    s.set_defaults(func=cmd_lemma)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GradingUnavailable as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
