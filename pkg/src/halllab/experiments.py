"""Named experiment runners and the batch config format.

A config file is plain text: `[name]` opens an experiment, `key = value`
lines fill it, `#` comments and blank lines are skipped. Values parse as
bool / int / exact rational ("1/2", "0.5") / float, falling back to bare
strings. Every experiment needs kind = invariants | extract | thm1 |
sample-hb; graph-consuming kinds name their input with graph = PATH.
expect_KEY / expect_min_KEY / expect_max_KEY rows turn into pass/fail
verdicts against the aggregate KEY.
"""

import re
import time
from dataclasses import dataclass
from fractions import Fraction

from .codecs import load_graph
from .errors import CodecError, ExtractionError
from .extraction import certify_sample, extract_semiregular, theorem1_pipeline
from .fractional import chi_f_exact
from .generators import random_semiregular, sample_hb
from .invariants import (DEFAULT_NODE_LIMIT, alpha_exact, clique_number,
                         hall_ratio, turan_bound)
from .reports import ExperimentReport
from .rng import Seed, as_seed

_SECTION_RE = re.compile(r"^\[([A-Za-z0-9_.-]+)\]$")
_KEY_RE = re.compile(r"^[a-z0-9_.-]+$")

_COMMON_KEYS = {"kind", "seed"}
_ALLOWED_KEYS = {
    "invariants": {"graph", "which", "node_limit"},
    "extract": {"graph", "a", "q", "retries"},
    "thm1": {"graph", "c", "trials", "retries", "node_limit"},
    "sample-hb": {"b", "a", "q", "trials", "node_limit"},
}
GRAPH_KINDS = {"invariants", "extract", "thm1"}

INVARIANT_NAMES = ("alpha", "hall-ratio", "chi-f", "clique", "turan")


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    line: int
    params: dict

    @property
    def kind(self):
        return self.params["kind"]


def parse_value(raw):
    s = raw.strip()
    low = s.lower()
    if low in ("true", "false"):
        return low == "true"
    for cast in (int, Fraction, float):
        try:
            return cast(s)
        except (ValueError, ZeroDivisionError):
            pass
    return s


def parse_config(text):
    """Config text -> list of ExperimentSpec, in file order."""
    specs = []
    names = set()
    current = None

    def flush():
        if current is None:
            return
        kind = current.params.get("kind")
        if kind not in _ALLOWED_KEYS:
            raise CodecError(f"experiment [{current.name}] needs kind = "
                             + " | ".join(sorted(_ALLOWED_KEYS)),
                             line=current.line)
        allowed = _ALLOWED_KEYS[kind] | _COMMON_KEYS
        for key, where in current.params.pop("_lines").items():
            if key.startswith("expect_") or key in allowed:
                continue
            raise CodecError(f"key {key!r} not understood by kind {kind!r}",
                             line=where)
        if kind in GRAPH_KINDS and "graph" not in current.params:
            raise CodecError(f"kind {kind!r} needs graph = PATH",
                             line=current.line)
        specs.append(current)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        header = _SECTION_RE.match(line)
        if header:
            flush()
            name = header.group(1)
            if name in names:
                raise CodecError(f"duplicate experiment name [{name}]",
                                 line=lineno)
            names.add(name)
            current = ExperimentSpec(name, lineno, {"_lines": {}})
            continue
        if "=" not in line:
            raise CodecError("expected [section] or key = value",
                             line=lineno)
        if current is None:
            raise CodecError("key outside any [experiment] section",
                             line=lineno)
        key, _, raw_value = line.partition("=")
        key = key.strip()
        if not _KEY_RE.match(key):
            raise CodecError(f"bad key {key!r}", line=lineno)
        if key in current.params["_lines"]:
            raise CodecError(f"duplicate key {key!r}", line=lineno)
        current.params["_lines"][key] = lineno
        current.params[key] = parse_value(raw_value)
    flush()
    return specs


def _fmt_set(vertices):
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


def _new_report(command, seed, parameters):
    return ExperimentReport(command=list(command), seed=seed.describe(),
                            parameters=parameters)


def run_invariants(graph, which, seed, command, node_limit=DEFAULT_NODE_LIMIT):
    which = list(which)
    bad = [w for w in which if w not in INVARIANT_NAMES]
    if bad:
        raise ValueError(f"unknown invariant {bad[0]!r}")
    started = time.perf_counter()
    rep = _new_report(command, seed, {
        "kind": "invariants", "which": which,
        "n": graph.n, "m": graph.m, "node_limit": node_limit,
    })
    lines = []
    agg = rep.aggregates
    cert = None
    for name in which:
        if name == "alpha":
            val, wit = alpha_exact(graph, node_limit)
            agg["alpha"] = val
            agg["alpha_witness"] = sorted(wit)
            lines.append(f"alpha = {val}, witness = {_fmt_set(wit)}")
        elif name == "hall-ratio":
            res = hall_ratio(graph, seed=seed.child(0))
            agg["rho"] = res.value
            agg["rho_witness"] = sorted(res.witness)
            agg["rho_exact"] = res.exact
            note = "" if res.exact else " (sampled lower bound)"
            lines.append(f"rho = {res.value}, "
                         f"witness = {_fmt_set(res.witness)}{note}")
        elif name == "chi-f":
            cert = chi_f_exact(graph, node_limit=node_limit)
            agg["chi_f"] = cert.value
            lines.append(f"chi_f = {cert.value}")
        elif name == "clique":
            val, wit = clique_number(graph, node_limit)
            agg["clique"] = val
            agg["clique_witness"] = sorted(wit)
            lines.append(f"clique = {val}, witness = {_fmt_set(wit)}")
        elif name == "turan":
            val = turan_bound(graph, node_limit)
            agg["turan"] = val
            lines.append(f"turan = {val}")
    rep.finalize(started)
    return rep, lines, cert


def run_extract(graph, a, q, seed, command, max_retries=64):
    started = time.perf_counter()
    rep = _new_report(command, seed, {
        "kind": "extract", "a": a, "q": q, "retries": max_retries,
        "n": graph.n, "m": graph.m,
    })
    try:
        pair, trace = extract_semiregular(graph, a, q, seed, max_retries)
    except ExtractionError as exc:
        rep.aggregates = dict(exc.trace.to_dict())
        rep.verdicts["success"] = False
        rep.finalize(started)
        return rep, [f"extraction failed: {exc}"], None
    rep.aggregates = dict(trace.to_dict())
    rep.verdicts["success"] = True
    mode = ("deterministic selection" if trace.deterministic
            else f"sampled selection, {trace.retries} retries")
    lines = [
        f"pair: |A| = {len(pair.side_a)}, |B| = {len(pair.side_b)}, "
        f"a = {pair.a}, q = {pair.q}",
        f"core: {trace.core_n} vertices, {trace.core_m} edges "
        f"(peel threshold {trace.peel_threshold}); {mode}",
    ]
    rep.finalize(started)
    return rep, lines, pair


def run_thm1(graph, c, trials, seed, command, max_retries=64,
             node_limit=DEFAULT_NODE_LIMIT, parallel=None):
    started = time.perf_counter()
    out = theorem1_pipeline(graph, c, seed, trials, max_retries,
                            node_limit, parallel)
    rep = _new_report(command, seed, {
        "kind": "thm1", "trials": trials, "retries": max_retries,
        "node_limit": node_limit, "n": graph.n, "m": graph.m,
        **out["params"],
    })
    rep.trials = out["trials"]
    rep.aggregates = {**out["aggregates"], "trace": out["trace"],
                      "pair": out["pair"]}
    certified = out["aggregates"]["certified"]
    rep.verdicts["any_certified"] = certified > 0
    lines = [
        f"constants: a = {out['params']['a']}, q = {out['params']['q']}, "
        f"degree threshold {out['params']['degree_threshold']}",
        f"pair: |A| = {out['pair']['a_size']}, |B| = {out['pair']['b_size']}",
        f"certified {certified}/{trials} samples",
        f"best chi_f lower bound = {out['aggregates']['best_chi_f_lower']} "
        f"(target > {c})",
    ]
    rep.finalize(started)
    return rep, lines


def run_sample_hb(b, a, q, trials, seed, command,
                  node_limit=DEFAULT_NODE_LIMIT, parallel=None,
                  keep_first_witness=False):
    started = time.perf_counter()
    pair = random_semiregular(b, a, q, seed.child(0))
    first_witness = None
    if keep_first_witness:
        _, first_witness = sample_hb(pair, seed.child(1), build_witness=True)

    def run_trial(t):
        hb = sample_hb(pair, seed.child(1 + t))
        rec = {"trial": t}
        rec.update(certify_sample(pair, hb, node_limit))
        return rec

    if parallel and parallel > 1 and trials > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            records = list(pool.map(run_trial, range(trials)))
    else:
        records = [run_trial(t) for t in range(trials)]
    certified = sum(1 for r in records if r["certified"])
    rep = _new_report(command, seed, {
        "kind": "sample-hb", "b": b, "a": a, "q": q, "trials": trials,
        "node_limit": node_limit,
    })
    rep.trials = records
    rep.aggregates = {
        "trials": trials,
        "certified": certified,
        "certified_fraction": str(Fraction(certified, trials)) if trials
        else "0",
        "best_chi_f_lower": str(max((Fraction(r["chi_f_lower"])
                                     for r in records),
                                    default=Fraction(0))),
    }
    rep.verdicts["any_certified"] = certified > 0
    lines = [f"pair: |B| = {b}, |A| = {q * b}, a = {a}, q = {q}",
             f"certified {certified}/{trials} samples",
             f"best chi_f lower bound = "
             f"{rep.aggregates['best_chi_f_lower']}"]
    root = _isqrt_exact(q)
    if root is not None:
        thr = (root * a + q) * b
        rep.aggregates["threshold"] = thr
        lines[1] += f" (alpha_w < {thr})"
    rep.finalize(started)
    return rep, lines, pair, first_witness


def _isqrt_exact(q):
    import math
    r = math.isqrt(q)
    return r if r * r == q else None


def _expected(value):
    if isinstance(value, bool):
        return value
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        return str(value)


def apply_expectations(params, aggregates):
    """expect_* keys -> verdict dict; unknown aggregate names fail."""
    verdicts = {}
    for key, want in params.items():
        if not key.startswith("expect_"):
            continue
        if key.startswith("expect_min_"):
            name, op = key[len("expect_min_"):], "min"
        elif key.startswith("expect_max_"):
            name, op = key[len("expect_max_"):], "max"
        else:
            name, op = key[len("expect_"):], "eq"
        if name not in aggregates:
            verdicts[key] = False
            continue
        have, want_c = _expected(aggregates[name]), _expected(want)
        if isinstance(have, bool) or isinstance(want_c, bool):
            verdicts[key] = have == want_c
        elif op == "min":
            verdicts[key] = have >= want_c
        elif op == "max":
            verdicts[key] = have <= want_c
        else:
            verdicts[key] = have == want_c
    return verdicts


def run_config(path, base_seed, parallel=None):
    """Execute a config file. Returns (summary, reports, lines, exit_code);
    exit 2 when anything was skipped or failed, 3 on budget exhaustion."""
    from .errors import BudgetExceededError
    with open(path) as fh:
        specs = parse_config(fh.read())
    base_seed = as_seed(base_seed)
    summary = {"experiments": [], "config": str(path)}
    reports, lines, exit_code = [], [], 0
    for index, spec in enumerate(specs):
        seed = (Seed(int(spec.params["seed"])) if "seed" in spec.params
                else base_seed.child(index))
        command = ["experiment", spec.name]
        entry = {"name": spec.name, "kind": spec.kind, "status": "ok"}
        try:
            if spec.kind in GRAPH_KINDS:
                graph = load_graph(spec.params["graph"])
            if spec.kind == "invariants":
                which = spec.params.get("which", ",".join(INVARIANT_NAMES))
                which = [w.strip() for w in str(which).split(",") if w.strip()]
                rep, text, _ = run_invariants(
                    graph, which, seed, command,
                    int(spec.params.get("node_limit", DEFAULT_NODE_LIMIT)))
            elif spec.kind == "extract":
                rep, text, pair = run_extract(
                    graph, int(spec.params["a"]), int(spec.params["q"]),
                    seed, command, int(spec.params.get("retries", 64)))
                if pair is None:
                    entry["status"] = "failed"
                    exit_code = max(exit_code, 2)
            elif spec.kind == "thm1":
                rep, text = run_thm1(
                    graph, int(spec.params.get("c", 2)),
                    int(spec.params.get("trials", 50)), seed, command,
                    int(spec.params.get("retries", 64)),
                    int(spec.params.get("node_limit", DEFAULT_NODE_LIMIT)),
                    parallel)
            elif spec.kind == "sample-hb":
                rep, text, _, _ = run_sample_hb(
                    int(spec.params.get("b", 8)),
                    int(spec.params.get("a", 4)),
                    int(spec.params.get("q", 16)),
                    int(spec.params.get("trials", 50)), seed, command,
                    int(spec.params.get("node_limit", DEFAULT_NODE_LIMIT)),
                    parallel)
        except FileNotFoundError as exc:
            entry["status"] = f"skipped: {exc.filename or exc} not found"
            summary["experiments"].append(entry)
            lines.append(f"[{spec.name}] {entry['status']}")
            exit_code = max(exit_code, 2)
            continue
        except BudgetExceededError:
            raise
        rep.verdicts.update(apply_expectations(spec.params, rep.aggregates))
        entry["verdicts"] = dict(rep.verdicts)
        summary["experiments"].append(entry)
        reports.append(rep)
        lines.append(f"[{spec.name}] " + ("ok" if entry["status"] == "ok"
                                          else entry["status"]))
        lines.extend("  " + t for t in text)
        for k, v in rep.verdicts.items():
            lines.append(f"  verdict {k}: {'pass' if v else 'FAIL'}")
    summary["passed"] = all(e["status"] == "ok"
                            and all(e.get("verdicts", {}).values())
                            for e in summary["experiments"])
    return summary, reports, lines, exit_code
