"""Experiment reports: one JSON shape for every run that deserves a record.

Reports are deterministic by construction: canonical() refuses types it
does not know, fractions become "p/q" strings, sets are sorted, and dumps
uses sorted keys. The two timing fields (wall_clock_s, timestamp) are the
only nondeterministic entries and strip_timing() removes exactly those, so
reproducibility checks are byte comparisons of the stripped dumps.
"""

import json
import math
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__
from .bounds import LogProb
from .graph import Graph, build_graph
from .fractional import ChiFCertificate
from .subdivision import SubdivisionWitness
from .graph import WeightAssignment

TIMING_FIELDS = ("wall_clock_s", "timestamp")


def canonical(obj):
    """Recursively convert to plain JSON-safe data; unknown types are an
    error rather than a silent repr."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, LogProb):
        out = {"log": canonical(obj.log)}
        if obj.zero:
            out["zero"] = True
        return out
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(canonical(v) for v in obj)
    if isinstance(obj, np.ndarray):
        return [canonical(v) for v in obj.tolist()]
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


@dataclass
class ExperimentReport:
    """Everything needed to audit or re-run one experiment."""

    command: list
    seed: dict
    parameters: dict
    trials: list = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    wall_clock_s: float = 0.0
    tool: str = "halllab"
    version: str = __version__
    timestamp: str = ""

    def finalize(self, started):
        self.wall_clock_s = time.perf_counter() - started
        self.timestamp = datetime.now(timezone.utc).isoformat()
        return self

    def to_dict(self):
        return canonical({
            "tool": self.tool,
            "version": self.version,
            "command": [str(c) for c in self.command],
            "seed": self.seed,
            "parameters": self.parameters,
            "trials": self.trials,
            "aggregates": self.aggregates,
            "verdicts": {str(k): bool(v) for k, v in self.verdicts.items()},
            "wall_clock_s": float(self.wall_clock_s),
            "timestamp": self.timestamp,
        })


def dumps_report(report):
    d = report.to_dict() if isinstance(report, ExperimentReport) else report
    return json.dumps(d, sort_keys=True, indent=2, allow_nan=False) + "\n"


def dump_report(report, path):
    with open(path, "w") as fh:
        fh.write(dumps_report(report))


def load_report(path):
    with open(path) as fh:
        return json.load(fh)


def strip_timing(report_dict):
    """Copy without the fields that legitimately differ between reruns."""
    return {k: v for k, v in report_dict.items() if k not in TIMING_FIELDS}


def _graph_to_dict(graph):
    return {"n": graph.n, "edges": [[int(u), int(v)] for u, v in graph.edges()]}


def _graph_from_dict(d):
    return build_graph(int(d["n"]), [tuple(e) for e in d["edges"]])


def certificate_to_dict(cert):
    return {
        "type": "chi_f_certificate",
        "value": str(cert.value),
        "primal": [{"set": sorted(int(v) for v in s), "weight": str(w)}
                   for s, w in cert.primal],
        "dual": [str(w) for w in cert.dual.weights],
    }


def certificate_from_dict(d):
    if d.get("type") != "chi_f_certificate":
        raise ValueError("not a chi_f certificate")
    primal = tuple((frozenset(int(v) for v in row["set"]),
                    Fraction(row["weight"])) for row in d["primal"])
    dual = WeightAssignment(tuple(Fraction(w) for w in d["dual"]))
    return ChiFCertificate(Fraction(d["value"]), primal, dual)


def witness_to_dict(witness):
    return {
        "type": "subdivision_witness",
        "host": _graph_to_dict(witness.host),
        "pattern": _graph_to_dict(witness.pattern),
        "branch_map": [int(v) for v in witness.branch_map],
        "sub_map": [[[int(u), int(v)], int(z)]
                    for (u, v), z in witness.sub_map],
    }


def witness_from_dict(d):
    if d.get("type") != "subdivision_witness":
        raise ValueError("not a subdivision witness")
    sub = tuple(((int(e[0]), int(e[1])), int(z)) for e, z in d["sub_map"])
    return SubdivisionWitness(_graph_from_dict(d["host"]),
                              _graph_from_dict(d["pattern"]),
                              tuple(int(v) for v in d["branch_map"]), sub)
