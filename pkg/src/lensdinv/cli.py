"""Command line interface.

One executable, `dinv`, with subcommands:

  dinv lens <p> <q> [label] [--all] [--self-conjugate]
  dinv plumbing <graph.json> [--all | --class REP] [--oracle] [--jobs N]
  dinv seifert <n> <k> <m> [--route closed|algorithm|both] [--jobs N]
  dinv obstruct <n> <k> <m> <sign>
  dinv classify <n> | --range a:b [--format json|csv]
  dinv oracle maximisers <n> <k> <m> [--verify] [--jobs N]

Output is a single JSON record on stdout (or CSV for classify with
--format csv) with rationals rendered as "a/b" in lowest terms and a
deterministic field order, so identical invocations produce identical
bytes.  Exit codes: 0 success, 2 input error, 3 algorithm inapplicable,
4 internal cross-check disagreement.
"""

import argparse
import json
import sys

from . import obstruction, plumbing, seifert
from .exactlin import CharVector, SpincClass
from .lens import LensSpace, self_conjugate_labels
from .plumbing import AlgorithmInapplicableError, PlumbingGraph, dinv_plumbed
from .seifert import (NotCoveredError, OutOfModeledRangeError, SeifertParams,
                      mu_shift)

EXIT_INPUT = 2
EXIT_INAPPLICABLE = 3
EXIT_DISAGREE = 4


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _rat(x):
    return str(x)


def _parse_sign(text):
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise CliError(EXIT_INPUT, f"sign must be +1 or -1, got {text!r}")


def _parse_vector(text):
    try:
        return tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError:
        raise CliError(EXIT_INPUT,
                       f"expected comma-separated integers, got {text!r}")


def cmd_lens(args):
    try:
        space = LensSpace(args.p, args.q)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc))
    record = {"command": "lens", "p": space.p, "q": space.q}
    if args.label is None or args.all:
        record["values"] = {str(i): _rat(space.d(i)) for i in range(space.p)}
    else:
        record["label"] = args.label % space.p
        record["d"] = _rat(space.d(args.label))
    if args.self_conjugate:
        labels = sorted(self_conjugate_labels(space.p, space.q))
        record["self_conjugate"] = {str(i): _rat(space.d(i)) for i in labels}
    record["provenance"] = "closed-form" if space.q == 1 else "recursion"
    return record


def cmd_plumbing(args):
    try:
        graph = PlumbingGraph.load(args.file)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(EXIT_INPUT, f"cannot read graph: {exc}")
    try:
        dinvs = dinv_plumbed(graph, prune=not args.oracle, jobs=args.jobs)
    except AlgorithmInapplicableError as exc:
        raise CliError(EXIT_INAPPLICABLE, str(exc))
    form = plumbing.intersection_form(graph)
    det = abs(form.det())
    record = {
        "command": "plumbing",
        "file": args.file,
        "vertices": graph.size,
        "det": det,
        "provenance": "algorithm" + ("" if args.oracle else " (chain-pruned)"),
    }
    classes = sorted(dinvs.items(), key=lambda kv: tuple(kv[0].representative))
    if args.spinc_class is not None:
        wanted = SpincClass(CharVector(_parse_vector(args.spinc_class), form),
                            form)
        if wanted in dinvs:
            record["class"] = list(wanted.representative)
            record["d"] = _rat(dinvs[wanted])
        else:
            record["class"] = list(wanted.representative)
            record["d"] = None
            record["note"] = ("no maximising-path supporter found in this "
                              "class; value not determined by the algorithm")
    else:
        record["classes"] = [
            {"representative": list(cls.representative), "d": _rat(value)}
            for cls, value in classes
        ]
        if len(classes) < det:
            record["note"] = (f"{det - len(classes)} of {det} classes have "
                              "no supporter and are absent")
    return record


def _seifert_closed(params):
    return seifert.dinv_closed_tM(params), seifert.dinv_closed_tM_mu(params)


def _seifert_algorithm(params, jobs):
    graph = seifert.seifert_plumbing(params)
    form = plumbing.intersection_form(graph)
    dinvs = dinv_plumbed(graph, jobs=jobs)
    rep = seifert.tM_representative(params)
    shifted = mu_shift(params).apply(rep, form)
    return dinvs[SpincClass(rep, form)], dinvs[SpincClass(shifted, form)]


def cmd_seifert(args):
    try:
        params = SeifertParams(args.n, args.k, args.m)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc))
    record = {"command": "seifert", "n": args.n, "k": args.k, "m": args.m,
              "route": args.route}
    if args.emit_graph:
        try:
            seifert.seifert_plumbing(params).save(args.emit_graph)
        except OutOfModeledRangeError as exc:
            raise CliError(EXIT_INPUT, str(exc))
        record["graph_file"] = args.emit_graph
    if args.route in ("closed", "both"):
        try:
            if args.m in (args.k - 1, args.k + 1):
                space, tm_label, mu_label = seifert.lens_case_labels(
                    args.n, args.k, args.m)
                closed = (space.d(tm_label), space.d(mu_label))
                record["lens_model"] = [space.p, space.q]
            else:
                closed = _seifert_closed(params)
        except (ValueError, OutOfModeledRangeError, NotCoveredError) as exc:
            raise CliError(EXIT_INPUT, f"closed route unavailable: {exc}")
        record["closed"] = {"d_self_conjugate": _rat(closed[0]),
                            "d_shifted": _rat(closed[1])}
    if args.route in ("algorithm", "both"):
        try:
            algo = _seifert_algorithm(params, args.jobs)
        except (OutOfModeledRangeError, AlgorithmInapplicableError) as exc:
            raise CliError(EXIT_INPUT, f"algorithm route unavailable: {exc}")
        record["algorithm"] = {"d_self_conjugate": _rat(algo[0]),
                               "d_shifted": _rat(algo[1])}
    if args.route == "both":
        agree = record["closed"] == record["algorithm"]
        record["cross_check"] = "AGREE" if agree else "DISAGREE"
        if not agree:
            return record, EXIT_DISAGREE
    return record


def cmd_obstruct(args):
    sign = _parse_sign(args.sign)
    try:
        case = obstruction.SurgeryCase(args.n, args.k, args.m, sign)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc))
    verdict = obstruction.check_case(case)
    record = {"command": "obstruct"}
    record.update(verdict.to_record())
    return record


def _parse_range(text):
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise CliError(EXIT_INPUT, f"expected a:b, got {text!r}")
    if lo > hi:
        raise CliError(EXIT_INPUT, "empty range")
    return lo, hi


def cmd_classify(args):
    if args.range:
        lo, hi = _parse_range(args.range)
        ns = [n for n in range(lo, hi + 1) if n % 2 == 1 and n >= 5]
    elif args.n is not None:
        ns = [args.n]
    else:
        raise CliError(EXIT_INPUT, "give n or --range a:b")
    for n in ns:
        if n < 5 or n % 2 == 0:
            raise CliError(EXIT_INPUT, f"n must be odd and >= 5, got {n}")
    rows = obstruction.classification_rows(ns)
    if args.format == "csv":
        lines = ["n,s,status,provenance,citation"]
        lines += [f"{r['n']},{r['s']},{r['status']},{r['provenance']},"
                  f"\"{r['citation']}\"" for r in rows]
        return "\n".join(lines)
    retained = {}
    for r in rows:
        if r["status"] != "pruned":
            retained.setdefault(r["n"], []).append(r["s"])
    record = {
        "command": "classify",
        "n": ns,
        "classification": {str(n): retained.get(n, []) for n in ns},
        "table": rows,
    }
    return record


def cmd_oracle_maximisers(args):
    try:
        params = SeifertParams(args.n, args.k, args.m)
        families = seifert.maximiser_families(params)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc))
    record = {
        "command": "oracle maximisers",
        "n": args.n, "k": args.k, "m": args.m,
        "count": len(families),
        "expected": params.homology_order,
        "vectors": [list(w) for w in families],
        "provenance": "closed-form",
    }
    if args.verify:
        graph = seifert.seifert_plumbing(params)
        brute = plumbing.maximising_supporters(graph, jobs=args.jobs)
        agree = sorted(map(tuple, brute)) == sorted(map(tuple, families))
        record["brute_force_count"] = len(brute)
        record["cross_check"] = "AGREE" if agree else "DISAGREE"
        if not agree:
            return record, EXIT_DISAGREE
    return record


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dinv",
        description="Exact d-invariants of lens spaces and plumbed "
                    "3-manifolds, and distance-one surgery obstructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_lens = sub.add_parser("lens", help="d-invariants of L(p,q)")
    p_lens.add_argument("p", type=int)
    p_lens.add_argument("q", type=int)
    p_lens.add_argument("label", type=int, nargs="?")
    p_lens.add_argument("--all", action="store_true",
                        help="print all p values")
    p_lens.add_argument("--self-conjugate", action="store_true",
                        help="also print the self-conjugate labels")
    p_lens.set_defaults(handler=cmd_lens)

    p_plumb = sub.add_parser("plumbing",
                             help="d-invariants of a plumbed manifold")
    p_plumb.add_argument("file", help="JSON plumbing graph")
    p_plumb.add_argument("--all", action="store_true", default=True,
                         help="print every supported class (default)")
    p_plumb.add_argument("--class", dest="spinc_class", metavar="REP",
                         help="only the class of this vector, e.g. '0,2'")
    p_plumb.add_argument("--oracle", action="store_true",
                         help="full brute force, no chain pruning")
    p_plumb.add_argument("--jobs", type=int, default=1)
    p_plumb.set_defaults(handler=cmd_plumbing)

    p_sf = sub.add_parser("seifert",
                          help="d-invariants of the surgery companion space")
    p_sf.add_argument("n", type=int)
    p_sf.add_argument("k", type=int)
    p_sf.add_argument("m", type=int)
    p_sf.add_argument("--route", choices=("closed", "algorithm", "both"),
                      default="closed")
    p_sf.add_argument("--jobs", type=int, default=1)
    p_sf.add_argument("--emit-graph", metavar="FILE",
                      help="also write the plumbing graph as JSON")
    p_sf.set_defaults(handler=cmd_seifert)

    p_ob = sub.add_parser("obstruct", help="verdict for one surgery case")
    p_ob.add_argument("n", type=int)
    p_ob.add_argument("k", type=int)
    p_ob.add_argument("m", type=int)
    p_ob.add_argument("sign", help="+1 or -1, the sign of the target s")
    p_ob.set_defaults(handler=cmd_obstruct)

    p_cl = sub.add_parser("classify",
                          help="surviving targets s for L(n,1)")
    p_cl.add_argument("n", type=int, nargs="?")
    p_cl.add_argument("--range", help="odd n in a:b")
    p_cl.add_argument("--format", choices=("json", "csv"), default="json")
    p_cl.set_defaults(handler=cmd_classify)

    p_or = sub.add_parser("oracle", help="independent oracles")
    or_sub = p_or.add_subparsers(dest="oracle_command", required=True)
    p_max = or_sub.add_parser("maximisers",
                              help="maximising-path supporter families")
    p_max.add_argument("n", type=int)
    p_max.add_argument("k", type=int)
    p_max.add_argument("m", type=int)
    p_max.add_argument("--verify", action="store_true",
                       help="compare against the brute-force search")
    p_max.add_argument("--jobs", type=int, default=1)
    p_max.set_defaults(handler=cmd_oracle_maximisers)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
    except CliError as exc:
        print(f"dinv: {exc}", file=sys.stderr)
        return exc.code
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if isinstance(result, str):
        print(result)
    else:
        print(json.dumps(result, indent=1, sort_keys=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
