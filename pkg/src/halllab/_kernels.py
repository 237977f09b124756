"""Kernel dispatch: compiled extension if importable, pure Python otherwise.

Set HALLLAB_FORCE_PURE=1 to skip the extension (useful for benchmarks and
for exercising the fallback in tests). The active backend name is exposed
as BACKEND.
"""

import os

from . import _pure

_speedups = None
if not os.environ.get("HALLLAB_FORCE_PURE"):
    try:
        from . import _speedups
    except ImportError:
        _speedups = None

BACKEND = "compiled" if _speedups is not None else "pure"

# Compiled kernels work on word-sized masks only; callers above this size
# (or with weights outside int64) must use the pure fallbacks directly.
COMPILED_MAX_MASK_N = 63

alpha_table_fill = _speedups.alpha_table_fill if _speedups else _pure.alpha_table_fill
hall_ratio_scan = _speedups.hall_ratio_scan if _speedups else _pure.hall_ratio_scan
greedy_bipartition = _speedups.greedy_bipartition if _speedups else _pure.greedy_bipartition
maxcut_refine = _speedups.maxcut_refine if _speedups else _pure.maxcut_refine
core_peel = _speedups.core_peel if _speedups else _pure.core_peel

_INT64_MAX = (1 << 62)


def mwis_solve(n, adj, weights, node_limit):
    """Route a max-weight independent set instance to the best backend.

    Falls back to the pure solver when the instance does not fit the
    compiled one (n > 63 or weight sums beyond int64).
    """
    if _speedups is not None and n <= COMPILED_MAX_MASK_N:
        total = sum(int(w) for w in weights)
        if total < _INT64_MAX:
            return _speedups.mwis_solve(n, adj, weights, node_limit)
    return _pure.mwis_solve(n, adj, weights, node_limit)


def backends():
    """Names and modules of every importable backend (for parity tests)."""
    out = {"pure": _pure}
    if _speedups is not None:
        out["compiled"] = _speedups
    return out
