"""Command line front end.

Graphs flow between subcommands as edge-list text on standard streams, so
generation pipes straight into analysis:

    halllab gen kneser 5 2 | halllab invariants --chi-f

Exit codes: 0 success, 2 precondition or parse error, 3 search budget
exhausted. HALLLAB_SEED provides the default seed; 0 otherwise.
"""

import argparse
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .bounds import (EventParams, chernoff_lower, chernoff_upper,
                     event_bound, union_bound_threshold, weight_lemma_bound)
from .codecs import emit_edge_list, load_graph, parse_graph_text, save_graph
from .errors import (BudgetExceededError, CodecError, ExtractionError,
                     GraphError)
from .experiments import (INVARIANT_NAMES, run_config, run_extract,
                          run_invariants, run_sample_hb, run_thm1)
from .fractional import verify_certificate
from .generators import (gnp, join_of_copies, kneser, mycielski,
                         one_subdivision, sample_layered)
from .invariants import DEFAULT_NODE_LIMIT
from .reports import (ExperimentReport, certificate_from_dict,
                      certificate_to_dict, dump_report, dumps_report,
                      load_report, witness_from_dict, witness_to_dict)
from .rng import Seed
from .subdivision import verify_witness


def _seed_from(args):
    if getattr(args, "seed", None) is not None:
        return Seed(args.seed)
    env = os.environ.get("HALLLAB_SEED")
    return Seed(int(env)) if env else Seed(0)


def _read_graph(args):
    if getattr(args, "input", None) and args.input != "-":
        return load_graph(args.input)
    return parse_graph_text(sys.stdin.read())


def _write_graph(graph, args):
    if getattr(args, "out", None) and args.out != "-":
        save_graph(graph, args.out)
    else:
        sys.stdout.write(emit_edge_list(graph))


def _emit(lines, report, args):
    for line in lines:
        print(line)
    if getattr(args, "json", None) and report is not None:
        dump_report(report, args.json)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _cmd_gen(args, argv):
    seed = _seed_from(args)
    if args.model == "kneser":
        graph = kneser(args.ground, args.subset)
    elif args.model == "mycielski":
        graph = _read_graph(args)
        for _ in range(args.repeat):
            graph = mycielski(graph)
    elif args.model == "join":
        graph = join_of_copies(_read_graph(args), args.copies)
    elif args.model == "subdivide":
        graph, _ = one_subdivision(_read_graph(args))
    elif args.model == "gnp":
        graph = gnp(args.n, args.p, seed)
    else:
        layered = sample_layered(args.n, args.M, seed)
        graph = layered.graph
        for key, ok in layered.preconditions().items():
            print(f"# {key}: {ok}", file=sys.stderr)
    _write_graph(graph, args)
    return 0


def _cmd_invariants(args, argv):
    which = [name for name in INVARIANT_NAMES
             if getattr(args, name.replace("-", "_"))]
    if not which:
        which = list(INVARIANT_NAMES)
    graph = _read_graph(args)
    rep, lines, cert = run_invariants(graph, which, _seed_from(args),
                                      ["halllab"] + argv,
                                      args.node_limit)
    if args.emit_certificate:
        if cert is None:
            raise GraphError("--emit-certificate needs --chi-f")
        with open(args.emit_certificate, "w") as fh:
            fh.write(dumps_report(certificate_to_dict(cert)))
    _emit(lines, rep, args)
    return 0


def _cmd_extract(args, argv):
    graph = _read_graph(args)
    rep, lines, pair = run_extract(graph, args.a, args.q, _seed_from(args),
                                   ["halllab"] + argv, args.retries)
    _emit(lines, rep, args)
    return 0 if pair is not None else 2


def _cmd_thm1(args, argv):
    graph = _read_graph(args)
    rep, lines = run_thm1(graph, args.c, args.trials, _seed_from(args),
                          ["halllab"] + argv, args.retries, args.node_limit,
                          args.parallel)
    _emit(lines, rep, args)
    return 0


def _cmd_sample_hb(args, argv):
    rep, lines, _, witness = run_sample_hb(
        args.b, args.a, args.q, args.trials, _seed_from(args),
        ["halllab"] + argv, args.node_limit, args.parallel,
        keep_first_witness=bool(args.emit_witness))
    if args.emit_witness:
        with open(args.emit_witness, "w") as fh:
            fh.write(dumps_report(witness_to_dict(witness)))
    _emit(lines, rep, args)
    return 0


def _fmt_log(lp):
    return f"e^{lp.log:g}"


def _bounds_report(args, argv, parameters, aggregates, lines):
    started = time.perf_counter()
    rep = ExperimentReport(command=["halllab"] + argv,
                           seed=Seed(0).describe(), parameters=parameters,
                           aggregates=aggregates)
    rep.finalize(started)
    _emit(lines, rep, args)
    return 0


def _cmd_bounds(args, argv):
    if args.law == "chernoff":
        fn = chernoff_upper if args.tail == "upper" else chernoff_lower
        lb = fn(args.mu, args.delta)
        return _bounds_report(
            args, argv,
            {"law": "chernoff", "tail": args.tail, "mu": args.mu,
             "delta": args.delta},
            {"bound": lb}, [f"bound = {_fmt_log(lb)}"])
    if args.law == "weight":
        wb = weight_lemma_bound(args.a, args.q, args.n, args.degz)
        lines = [f"bound = {_fmt_log(wb.bound)}",
                 f"trivial = {str(wb.trivial).lower()}",
                 f"hypothesis_met = {str(wb.hypothesis_met).lower()}"]
        return _bounds_report(
            args, argv,
            {"law": "weight", "a": args.a, "q": args.q, "n": args.n,
             "degz": args.degz},
            {"bound": wb.bound, "trivial": wb.trivial,
             "hypothesis_met": wb.hypothesis_met}, lines)
    if args.law == "events":
        kinds = ("branch", "subdivision") if args.kind == "both" \
            else (args.kind,)
        params = EventParams(args.n, args.M, args.m, args.s, args.t)
        lines, agg = [], {}
        for kind in kinds:
            eb = event_bound(kind, params)
            lines.append(
                f"{kind}: full = {_fmt_log(eb.full)}, simplified = "
                f"{_fmt_log(eb.simplified)}, target = {_fmt_log(eb.target)}"
                f", full<=target = {str(eb.full_meets_target).lower()}"
                f", simplified<=target = "
                f"{str(eb.simplified_meets_target).lower()}")
            agg[kind] = {"full": eb.full, "simplified": eb.simplified,
                         "target": eb.target,
                         "full_meets_target": eb.full_meets_target,
                         "simplified_meets_target":
                         eb.simplified_meets_target}
        return _bounds_report(
            args, argv,
            {"law": "events", "n": args.n, "M": args.M, "m": args.m,
             "s": args.s, "t": args.t, "kind": args.kind}, agg, lines)
    # threshold
    bases = [int(b) for b in args.bases.split(",") if b.strip()]
    cands = [b ** (4 ** args.M) for b in bases]
    rep = union_bound_threshold(args.M, cands, args.s_cap)
    lines = []
    for base, row in zip(bases, rep.rows):
        lines.append(
            f"base {base} (n = {base}^{4 ** args.M}): branch sum = "
            f"e^{row['branch_log']:g}, subdivision sum = "
            f"e^{row['subdivision_log']:g}, passes = "
            f"{str(row['passes']).lower()}")
    minimal = rep.minimal_passing
    lines.append("minimal passing candidate: "
                 + (f"n = {minimal} (base {bases[cands.index(minimal)]})"
                    if minimal is not None else "none"))
    lines.append(f"monotone nonincreasing = "
                 f"{str(rep.monotone_nonincreasing).lower()}")
    lines.append(f"closed-form tail at target = {rep.paper_tail} < 1/2")
    return _bounds_report(
        args, argv,
        {"law": "threshold", "M": args.M, "bases": bases,
         "s_cap": rep.s_cap},
        {"rows": list(rep.rows),
         "minimal_passing": minimal,
         "monotone_nonincreasing": rep.monotone_nonincreasing,
         "paper_tail": rep.paper_tail}, lines)


def _cmd_verify(args, argv):
    payload = load_report(args.file)
    kind = payload.get("type")
    if kind == "chi_f_certificate":
        if not args.graph:
            raise GraphError("certificate verification needs --graph")
        graph = load_graph(args.graph)
        cert = certificate_from_dict(payload)
        result = verify_certificate(graph, cert)
        label = f"certificate (chi_f = {cert.value})"
    elif kind == "subdivision_witness":
        witness = witness_from_dict(payload)
        result = verify_witness(witness)
        label = (f"witness ({witness.pattern.n} branch + "
                 f"{len(witness.sub_map)} subdivision vertices)")
    else:
        raise CodecError(f"unrecognized payload type {kind!r}")
    if result.ok:
        print(f"VALID {label}")
        return 0
    print(f"INVALID {label}")
    for failure in result.failures:
        print(f"  {failure}")
    return 2


def _cmd_experiment(args, argv):
    summary, reports, lines, code = run_config(args.config, _seed_from(args),
                                               args.parallel)
    for line in lines:
        print(line)
    print(f"summary: {len(summary['experiments'])} experiments, passed = "
          f"{str(summary['passed']).lower()}")
    if args.json:
        payload = {"summary": summary,
                   "reports": [r.to_dict() for r in reports]}
        with open(args.json, "w") as fh:
            fh.write(dumps_report(payload))
    return code


def _add_graph_io(p, output=False):
    p.add_argument("--input", "-i", default=None,
                   help="graph file (edge list or DIMACS); default stdin")
    if output:
        p.add_argument("--out", "-o", default=None,
                       help="output file; default stdout")


def _add_seed(p):
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: HALLLAB_SEED or 0)")


def build_parser():
    top = argparse.ArgumentParser(
        prog="halllab",
        description="exact graph invariants and randomized constructions "
                    "for Hall-ratio experiments")
    top.add_argument("--version", action="version",
                     version=f"halllab {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate or transform graphs")
    gsub = gen.add_subparsers(dest="model", required=True)
    g = gsub.add_parser("kneser", help="subsets adjacent iff disjoint")
    g.add_argument("ground", type=int)
    g.add_argument("subset", type=int)
    _add_graph_io(g, output=True)
    g = gsub.add_parser("mycielski", help="Mycielskian of the input graph")
    g.add_argument("--repeat", type=int, default=1)
    _add_graph_io(g, output=True)
    g = gsub.add_parser("join", help="join of k copies of the input graph")
    g.add_argument("copies", type=int)
    _add_graph_io(g, output=True)
    g = gsub.add_parser("subdivide", help="replace each edge by a 2-path")
    _add_graph_io(g, output=True)
    g = gsub.add_parser("gnp", help="G(n, p) with exact rational p")
    g.add_argument("n", type=int)
    g.add_argument("p", type=_fraction)
    _add_seed(g)
    _add_graph_io(g, output=True)
    g = gsub.add_parser("layered", help="layered random graph on n = r^4^M")
    g.add_argument("n", type=int)
    g.add_argument("M", type=int)
    _add_seed(g)
    _add_graph_io(g, output=True)
    for p in gsub.choices.values():
        p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("invariants", help="exact invariants of one graph")
    for name in INVARIANT_NAMES:
        p.add_argument(f"--{name}", action="store_true")
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.add_argument("--emit-certificate", metavar="PATH",
                   help="write the chi_f certificate as JSON")
    p.add_argument("--json", metavar="PATH")
    _add_seed(p)
    _add_graph_io(p)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("extract", help="pull a semi-regular pair out of a "
                                       "dense graph")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--retries", type=int, default=64)
    p.add_argument("--json", metavar="PATH")
    _add_seed(p)
    _add_graph_io(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("thm1", help="extract, sample, and certify chi_f > c")
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--retries", type=int, default=64)
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.add_argument("--parallel", type=int, default=None)
    p.add_argument("--json", metavar="PATH")
    _add_seed(p)
    _add_graph_io(p)
    p.set_defaults(func=_cmd_thm1)

    p = sub.add_parser("sample-hb", help="sample pattern graphs from a "
                                         "synthesized semi-regular pair")
    p.add_argument("--b", type=int, default=8, help="size of the B side")
    p.add_argument("--a", type=int, default=4)
    p.add_argument("--q", type=int, default=16)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.add_argument("--parallel", type=int, default=None)
    p.add_argument("--emit-witness", metavar="PATH",
                   help="write the first sample's subdivision witness")
    p.add_argument("--json", metavar="PATH")
    _add_seed(p)
    p.set_defaults(func=_cmd_sample_hb)

    bounds = sub.add_parser("bounds", help="probability-bound evaluators")
    bsub = bounds.add_subparsers(dest="law", required=True)
    b = bsub.add_parser("chernoff")
    b.add_argument("--mu", type=float, required=True)
    b.add_argument("--delta", type=float, required=True)
    b.add_argument("--tail", choices=("upper", "lower"), default="lower")
    b.add_argument("--json", metavar="PATH")
    b = bsub.add_parser("weight")
    b.add_argument("--a", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--degz", type=int, required=True)
    b.add_argument("--json", metavar="PATH")
    b = bsub.add_parser("events")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--M", type=int, required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--s", type=int, required=True)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--kind", choices=("branch", "subdivision", "both"),
                   default="both")
    b.add_argument("--json", metavar="PATH")
    b = bsub.add_parser("threshold")
    b.add_argument("--M", type=int, default=2)
    b.add_argument("--bases", default="16,32,64,128,256",
                   help="comma list of bases r; candidates are r^(4^M)")
    b.add_argument("--s-cap", type=int, default=64)
    b.add_argument("--json", metavar="PATH")
    for p in bsub.choices.values():
        p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="re-check a certificate or witness "
                                      "JSON file")
    p.add_argument("file")
    p.add_argument("--graph", metavar="PATH",
                   help="host graph (certificates only)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("experiment", help="run a batch config file")
    p.add_argument("config")
    p.add_argument("--parallel", type=int, default=None)
    p.add_argument("--json", metavar="PATH")
    _add_seed(p)
    p.set_defaults(func=_cmd_experiment)

    return top


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except BrokenPipeError:
        # downstream closed the pipe (e.g. | head); not our failure
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (CodecError, ExtractionError, GraphError, FileNotFoundError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
