"""Revised simplex over exact rationals, for small covering LPs whose
columns arrive dynamically (column generation).

Minimizes c.x subject to A x = b, x >= 0. The basis inverse, basic
solution, and duals are exact rationals (gmpy2.mpq when available, else
fractions.Fraction; results are always returned as Fraction). Pricing uses
Dantzig's rule until a stretch of degenerate pivots, then permanently
switches to Bland's rule, which guarantees termination; entering and
leaving ties go to the smallest column index, so runs are deterministic.
Duals are maintained incrementally: after a pivot with entering reduced
cost rc and new inverse row rho, y' = y + rc * rho.
"""

from fractions import Fraction

from .errors import BudgetExceededError

try:
    from gmpy2 import mpq as _Q
except ImportError:
    _Q = Fraction

_ZERO = _Q(0)
_ONE = _Q(1)
_STALL_LIMIT = 30


class RationalSimplex:
    def __init__(self, n_rows, rhs=None):
        self.m = int(n_rows)
        if rhs is None:
            rhs = [1] * self.m
        self.rhs = [_Q(Fraction(x)) for x in rhs]
        if any(b < 0 for b in self.rhs):
            raise ValueError("rhs must be nonnegative for the identity start")
        self.cols = []
        self.costs = []
        self.basis = None
        self.binv = None
        self.xb = None
        self.pivots = 0
        self._y = None
        self._bland = False
        self._stall = 0
        self._basic = set()

    def add_column(self, entries, cost):
        """Register a sparse column; entries are (row, coef) pairs."""
        col = sorted((int(r), _Q(Fraction(c))) for r, c in entries)
        rows = [r for r, _ in col]
        if rows and (rows[0] < 0 or rows[-1] >= self.m):
            raise ValueError("column entry row out of range")
        if len(set(rows)) != len(rows):
            raise ValueError("duplicate row in column")
        if any(c == 0 for _, c in col):
            raise ValueError("zero coefficient in sparse column")
        self.cols.append(col)
        self.costs.append(_Q(Fraction(cost)))
        return len(self.cols) - 1

    def set_identity_basis(self, col_ids):
        """Start from a basis whose matrix is the identity (column i of the
        basis must be the unit vector e_i)."""
        col_ids = list(col_ids)
        if len(col_ids) != self.m:
            raise ValueError("basis needs exactly one column per row")
        for i, j in enumerate(col_ids):
            if self.cols[j] != [(i, _ONE)]:
                raise ValueError(f"column {j} is not the unit vector e_{i}")
        self.basis = col_ids
        self._basic = set(col_ids)
        self.binv = [[_ONE if i == j else _ZERO for j in range(self.m)]
                     for i in range(self.m)]
        self.xb = list(self.rhs)
        self._y = [self.costs[j] for j in col_ids]

    def duals(self):
        """y = c_B B^-1, as Fractions."""
        return [Fraction(v) for v in self._y]

    def objective(self):
        total = _ZERO
        for i in range(self.m):
            total += self.costs[self.basis[i]] * self.xb[i]
        return Fraction(total)

    def solution(self):
        """Nonzero primal values keyed by column index, as Fractions."""
        out = {}
        for i in range(self.m):
            if self.xb[i] != 0:
                out[self.basis[i]] = Fraction(self.xb[i])
        return out

    def _entering(self):
        y = self._y
        best = -1
        best_rc = _ZERO
        for j in range(len(self.cols)):
            if j in self._basic:
                continue
            rc = self.costs[j]
            for r, a in self.cols[j]:
                rc -= y[r] * a
            if rc < 0:
                if self._bland:
                    return j, rc
                if rc < best_rc:
                    best = j
                    best_rc = rc
        return best, best_rc

    def solve(self, max_pivots=200_000):
        """Pivot to optimality; returns the objective value as a Fraction.
        max_pivots bounds the cumulative pivot count of this instance."""
        if self.basis is None:
            raise ValueError("no starting basis; call set_identity_basis")
        m = self.m
        binv = self.binv
        xb = self.xb
        while True:
            j, rc = self._entering()
            if j < 0:
                return self.objective()
            d = [_ZERO] * m
            for r, a in self.cols[j]:
                for i in range(m):
                    bi = binv[i][r]
                    if bi:
                        d[i] += bi * a
            leave = -1
            theta = None
            for i in range(m):
                if d[i] > 0:
                    t = xb[i] / d[i]
                    if (theta is None or t < theta
                            or (t == theta and self.basis[i] < self.basis[leave])):
                        theta = t
                        leave = i
            if leave < 0:
                # covering objectives are bounded below by zero, so a
                # decreasing ray means the caller built a bad LP
                raise ValueError("LP is unbounded")
            self.pivots += 1
            if self.pivots > max_pivots:
                raise BudgetExceededError(
                    f"simplex exhausted {max_pivots} pivots", nodes=self.pivots)
            if theta == 0:
                self._stall += 1
                if self._stall >= _STALL_LIMIT:
                    self._bland = True
            else:
                self._stall = 0
            dr = d[leave]
            row = binv[leave]
            if dr != 1:
                row = [x / dr for x in row]
                binv[leave] = row
            for i in range(m):
                if i == leave:
                    continue
                f = d[i]
                if f:
                    bi = binv[i]
                    binv[i] = [bi[k] - f * row[k] if row[k] else bi[k]
                               for k in range(m)]
                    xb[i] -= f * theta
            xb[leave] = theta
            y = self._y
            self._y = [y[k] + rc * row[k] if row[k] else y[k]
                       for k in range(m)]
            self._basic.discard(self.basis[leave])
            self._basic.add(j)
            self.basis[leave] = j
