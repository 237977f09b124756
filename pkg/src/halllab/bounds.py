"""Probability bounds and exact laws for the random models.

Probabilities that can be astronomically small (or, for vacuous bounds,
astronomically large) are carried as natural logs (LogProb) with an
exact-zero flag; everything countable at desk scale, like independence
probabilities in the pair-sampling model, is exact rational arithmetic.

The layered-graph union bounds follow two counting arguments over events
indexed by (m, s, t). The "branch" family, for patterns whose branch
vertices all sit in layers before B_m, is bounded by

    (2e)^2t (n/s)^(s+t) s^2t n^(2t(e4-1)),      e4 = 4^(m-1) / 4^(M+1),

and the "subdivision" family, same condition on the subdivision vertices,
by

    (en/s)^s (es)^t M^t n^((e4-1)t).

Both are exactly geometric in t, so t-sums close once the ratio is
certified below 1/2; s-sums are enumerated up to a cap and the remainder
up to |B_m| is bounded through log-convexity of the per-s totals (a
log-convex function on an interval is maximized at an endpoint).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import GraphError
from .generators import layer_sizes_exact

_LN2E = math.log(2 * math.e)
_LOG_HALF = math.log(0.5)


@dataclass(frozen=True)
class LogProb:
    """Nonnegative quantity in log space. zero=True marks an exact zero
    (log is -inf); log > 0 is allowed for bounds that exceed one."""

    log: float
    zero: bool = False

    @classmethod
    def one(cls):
        return cls(0.0)

    @classmethod
    def exact_zero(cls):
        return cls(float("-inf"), True)

    @classmethod
    def from_log(cls, x):
        return cls(float(x))

    @classmethod
    def from_fraction(cls, value):
        value = Fraction(value)
        if value < 0:
            raise ValueError("probabilities cannot be negative")
        if value == 0:
            return cls.exact_zero()
        return cls(math.log(value.numerator) - math.log(value.denominator))

    def __mul__(self, other):
        if self.zero or other.zero:
            return LogProb.exact_zero()
        return LogProb(self.log + other.log)

    def __pow__(self, k):
        k = int(k)
        if k == 0:
            return LogProb.one()
        if self.zero:
            return LogProb.exact_zero()
        return LogProb(self.log * k)

    def _key(self):
        return float("-inf") if self.zero else self.log

    def __le__(self, other):
        return self._key() <= _as_log(other)

    def __lt__(self, other):
        return self._key() < _as_log(other)

    def to_float(self):
        return 0.0 if self.zero else math.exp(self.log)


def _as_log(value):
    if isinstance(value, LogProb):
        return value._key()
    value = Fraction(value) if not isinstance(value, float) else value
    if value < 0:
        raise ValueError("cannot compare against a negative value")
    if value == 0:
        return float("-inf")
    if isinstance(value, Fraction):
        return math.log(value.numerator) - math.log(value.denominator)
    return math.log(value)


def _logsumexp(values):
    finite = [v for v in values if v != float("-inf")]
    if not finite:
        return float("-inf")
    top = max(finite)
    if top == float("inf"):
        return top
    return top + math.log(sum(math.exp(v - top) for v in finite))


def _log1mexp(a):
    """log(1 - e^a) for a < 0."""
    if a >= 0:
        raise ValueError("needs a < 0")
    if a < -math.log(2):
        return math.log1p(-math.exp(a))
    return math.log(-math.expm1(a))


def chernoff_upper(mu, delta):
    """Multiplicative Chernoff, upper tail: Prob[X >= (1+delta) mu] <=
    exp(-delta^2 mu / (2 + delta)). delta = 1 gives exp(-mu/3)."""
    mu, delta = float(mu), float(delta)
    if mu < 0 or delta < 0:
        raise ValueError("needs mu >= 0 and delta >= 0")
    return LogProb(-(delta * delta) * mu / (2 + delta))


def chernoff_lower(mu, delta):
    """Multiplicative Chernoff, lower tail: Prob[X <= (1-delta) mu] <=
    exp(-delta^2 mu / 2) for 0 <= delta <= 1. delta = 1/2 gives
    exp(-mu/8)."""
    mu, delta = float(mu), float(delta)
    if mu < 0 or not (0 <= delta <= 1):
        raise ValueError("needs mu >= 0 and 0 <= delta <= 1")
    return LogProb(-(delta * delta) * mu / 2)


def hb_independence_probability(pair, z_vertices):
    """Exact probability that Z (pair-graph B ids) is independent in H_B.

    Each A-vertex v kills Z's independence iff its uniform pair choice
    lands inside Z, so independently of the others contributes the factor
    1 - C(d_Z(v), 2) / C(a, 2). The product is exact; it is zero iff some
    A-vertex has all its neighbors in Z.
    """
    z = frozenset(int(v) for v in z_vertices)
    if not z <= set(pair.side_b):
        raise GraphError("Z must be a subset of the pair's B side")
    pairs_total = math.comb(pair.a, 2)
    if pairs_total == 0:
        raise GraphError("pair sampling needs A-degree >= 2")
    prob = Fraction(1)
    for v in pair.side_a:
        dz = sum(1 for u in pair.graph.neighbors(v) if int(u) in z)
        prob *= Fraction(pairs_total - math.comb(dz, 2), pairs_total)
        if prob == 0:
            break
    return prob


@dataclass(frozen=True)
class WeightBound:
    bound: LogProb
    trivial: bool          # degZ <= qn, where the estimate says nothing
    hypothesis_met: bool   # degZ >= (sqrt(q) a + q) n, exactly


def weight_lemma_bound(a, q, n, deg_z):
    """Independence-probability bound for heavy sets in the sampling model:
    exp(-degZ (degZ - qn) / (a^2 q n)) once degZ exceeds qn, else the
    trivial 1. hypothesis_met reports degZ >= (sqrt(q) a + q) n via integer
    arithmetic ((degZ - qn)^2 >= q (an)^2), the regime where the bound
    drops to e^-n or below. That regime is unreachable for some small
    (a, q): it needs a(sqrt(q) - 1) >= sqrt(q), so never for q = 1, and
    only from a >= 4 (q = 2) resp. a >= 3 (q = 3).
    """
    if a < 2 or q < 1 or n < 1:
        raise ValueError("needs a >= 2, q >= 1, n >= 1")
    if deg_z < 0 or deg_z > a * q * n:
        raise ValueError(f"degZ must lie in [0, aqn] = [0, {a * q * n}]")
    excess = deg_z - q * n
    if excess <= 0:
        return WeightBound(LogProb.one(), True, False)
    hyp = excess * excess >= q * (a * n) ** 2
    log = -Fraction(deg_z * excess, a * a * q * n)
    return WeightBound(LogProb(float(log)), False, hyp)


@dataclass(frozen=True)
class EventParams:
    """Index of one pattern event in the layered model: patterns with s
    vertices on the constrained side and t edges, all constrained vertices
    in layers before B_m."""

    n: int
    M: int
    m: int
    s: int
    t: int

    def __post_init__(self):
        if self.M < 2:
            raise ValueError("event bounds need M >= 2")
        if not (2 <= self.m <= self.M):
            raise ValueError("m must lie in 2..M")
        b_m = self.layer_size()  # also checks n is a 4^M-th power
        if not (1 <= self.s <= b_m):
            raise ValueError(f"s must lie in 1..|B_m| = {b_m}")
        if self.t < 4 * self.s:
            raise ValueError("t must be at least 4s")

    def layer_size(self):
        return layer_sizes_exact(self.n, self.M)[self.m - 1]

    def eps4(self):
        """eps_M * 4^(m-1), the layer exponent entering every bound."""
        return 4 ** (self.m - 1) / 4 ** (self.M + 1)


@dataclass(frozen=True)
class EventBound:
    kind: str
    params: EventParams
    full: LogProb
    simplified: LogProb
    target: LogProb        # (8M)^-t
    full_meets_target: bool
    simplified_meets_target: bool


def event_bound(kind, params):
    """Upper bound on the probability of one (m, s, t) pattern event.

    kind "branch": patterns whose s branch vertices all avoid B_m..B_M;
    kind "subdivision": same constraint on the subdivision vertices. full
    is the counting-argument product; simplified is the coarser x-power
    form ((2e)^2t x^(4s-2t) resp. (e^2 M)^t x^-t, x = n^(eps 4^(m-1)))
    that the asymptotic step compares against (8M)^-t. full <= simplified
    always; the target flags record which forms actually reach (8M)^-t at
    this concrete n.
    """
    p = params
    ln_n, ln_s = math.log(p.n), math.log(p.s)
    e4 = p.eps4()
    x_log = e4 * ln_n
    if kind == "branch":
        full = (2 * p.t * _LN2E + (p.s + p.t) * (ln_n - ln_s)
                + 2 * p.t * ln_s + 2 * p.t * (e4 - 1) * ln_n)
        simp = 2 * p.t * _LN2E + (4 * p.s - 2 * p.t) * x_log
    elif kind == "subdivision":
        full = (p.s * (1 + ln_n - ln_s) + p.t * (1 + ln_s)
                + p.t * math.log(p.M) + p.t * (e4 - 1) * ln_n)
        simp = p.t * (2 + math.log(p.M)) - p.t * x_log
    else:
        raise ValueError(f"unknown event kind {kind!r}")
    target = -p.t * math.log(8 * p.M)
    return EventBound(kind, p, LogProb(full), LogProb(simp),
                      LogProb(target), full <= target, simp <= target)


def paper_union_tail(M):
    """The closed-form final step 4 sum_(m=2..M) (8M)^-4, exactly."""
    if M < 2:
        raise ValueError("needs M >= 2")
    return Fraction(4 * (M - 1), (8 * M) ** 4)


_T_EXPLICIT = 64  # explicit t-terms reach max(64, 8s) before tail closure


def _t_sum(f_log, g_log, s, explicit):
    """log of sum over t >= 4s of the event bound, given the first term
    f_log and the constant per-t log-ratio g_log. Explicit terms up to
    t = max(64, 8s) when asked, then a geometric tail; the closure demands
    ratio < 1/2. None when that certificate fails."""
    if g_log >= _LOG_HALF:
        return None
    if explicit:
        count = max(_T_EXPLICIT, 8 * s) - 4 * s + 1
        terms = [f_log + k * g_log for k in range(count)]
        tail = terms[-1] + g_log - _log1mexp(g_log)
        return _logsumexp(terms + [tail])
    return f_log - _log1mexp(g_log)


def _side_sum(kind, n, M, s_cap):
    """log of sum_(m=2..M) sum_(s=1..|B_m|) sum_(t>=4s) of the full event
    bound. s runs explicitly to s_cap; the remainder is bounded by
    (|B_m| - s_cap) * max of the per-s totals at the two ends, sound
    because log F(s) = s (c + 3 log s) and -log(1 - g s) are both convex
    in s. Returns (log_sum, certified); uncertified sums are +inf.
    """
    ln_n = math.log(n)
    sizes = layer_sizes_exact(n, M)
    per_m = []
    for m in range(2, M + 1):
        e4 = 4 ** (m - 1) / 4 ** (M + 1)
        b_m = sizes[m - 1]
        if kind == "branch":
            def g_log(s):
                return 2 * _LN2E + math.log(s) + (2 * e4 - 1) * ln_n

            def f_log(s):
                return (8 * s * _LN2E + 5 * s * (ln_n - math.log(s))
                        + 8 * s * math.log(s) + 8 * s * (e4 - 1) * ln_n)
        else:
            def g_log(s):
                return 1 + math.log(s) + math.log(M) + (e4 - 1) * ln_n

            def f_log(s):
                return (s * (1 + ln_n - math.log(s))
                        + 4 * s * (1 + math.log(s))
                        + 4 * s * math.log(M) + 4 * s * (e4 - 1) * ln_n)

        def h_log(s, explicit):
            return _t_sum(f_log(s), g_log(s), s, explicit)

        terms = []
        for s in range(1, min(s_cap, b_m) + 1):
            h = h_log(s, explicit=True)
            if h is None:
                return float("inf"), False
            terms.append(h)
        if b_m > s_cap:
            # g grows with s, so certifying the ratio at s = |B_m| covers
            # the whole tail range; endpoints by geometric closure alone
            lo, hi = h_log(s_cap + 1, False), h_log(b_m, False)
            if lo is None or hi is None:
                return float("inf"), False
            terms.append(math.log(b_m - s_cap) + max(lo, hi))
        per_m.append(_logsumexp(terms))
    return _logsumexp(per_m), True


@dataclass(frozen=True)
class ThresholdReport:
    M: int
    s_cap: int
    rows: tuple            # one dict per candidate n, in input order
    minimal_passing: int   # smallest passing n, or None
    monotone_nonincreasing: bool
    paper_tail: Fraction


def union_bound_threshold(M, n_candidates, s_cap=64):
    """Evaluate both union bounds at each candidate n (4^M-th powers,
    ascending) and report where the summed failure bounds first certify
    below 1/2 on both sides."""
    if M < 2:
        raise ValueError("needs M >= 2")
    ns = [int(n) for n in n_candidates]
    if ns != sorted(ns):
        raise ValueError("candidates must be ascending")
    rows = []
    minimal = None
    for n in ns:
        row = {"n": n}
        passes = True
        for kind in ("branch", "subdivision"):
            log_sum, certified = _side_sum(kind, n, M, s_cap)
            row[f"{kind}_log"] = log_sum
            row[f"{kind}_certified"] = certified
            passes = passes and certified and log_sum < _LOG_HALF
        row["passes"] = passes
        if passes and minimal is None:
            minimal = n
        rows.append(row)
    monotone = True
    for kind in ("branch", "subdivision"):
        good = [r[f"{kind}_log"] for r in rows if r[f"{kind}_certified"]]
        for prev, cur in zip(good, good[1:]):
            if cur > prev + 1e-9:
                monotone = False
    return ThresholdReport(M, s_cap, tuple(rows), minimal,
                           monotone, paper_union_tail(M))
