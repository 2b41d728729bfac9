"""Exact rational linear programming: two-phase primal simplex with Bland's
rule, a feasibility front end that reports Farkas row supports, and the
best-first binary enumeration driver used by the inertia MILPs.

Everything is Fraction arithmetic end to end; the callers rationalize any
floating-point spectra before building programs (fixed 2^40 denominators,
see spectral_bounds).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from .errors import BudgetExceeded, NoFeasibleAssignment, TooLarge

MAX_VARIABLES = 128

LE, EQ, GE = "<=", "==", ">="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """minimize objective . x subject to rows (coeffs, rel, rhs).

    bounds[j] = (lo, hi) with None for unbounded; variables default to free.
    """

    objective: tuple
    constraints: tuple
    bounds: Optional[tuple] = None


@dataclass
class LpResult:
    status: str
    value: Optional[Fraction] = None
    solution: Optional[tuple] = None
    farkas_rows: Optional[frozenset] = None  # constraint indices witnessing infeasibility


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class _Tableau:
    """Dense simplex tableau over Fractions; rows + objective handled apart."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction]):
        self.rows = rows
        self.rhs = rhs
        self.basis: list[int] = [-1] * len(rows)

    def pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        inv = 1 / piv
        row = [x * inv for x in self.rows[r]]
        self.rows[r] = row
        self.rhs[r] *= inv
        for i in range(len(self.rows)):
            if i != r:
                f = self.rows[i][c]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(self.rows[i], row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c


def _run_simplex(tab: _Tableau, cost: list[Fraction],
                 banned: frozenset = frozenset()) -> tuple[str, Fraction, list[Fraction]]:
    """Minimize cost over the tableau's feasible region (Bland's rule).

    Returns (status, objective value, reduced costs).  The reduced-cost
    row is maintained incrementally like any other tableau row.
    """
    m = len(tab.rows)
    ncols = len(cost)
    rc = list(cost)
    value = Fraction(0)  # current objective value sum c_B * rhs
    for i in range(m):
        ci = cost[tab.basis[i]]
        if ci:
            row = tab.rows[i]
            for j in range(ncols):
                if row[j]:
                    rc[j] -= ci * row[j]
            value += ci * tab.rhs[i]
    while True:
        entering = -1
        for j in range(ncols):
            if rc[j] < 0 and j not in banned:
                entering = j
                break
        if entering < 0:
            return OPTIMAL, value, rc
        leaving, best = -1, None
        for i in range(m):
            a = tab.rows[i][entering]
            if a > 0:
                ratio = tab.rhs[i] / a
                if best is None or ratio < best or (
                        ratio == best and tab.basis[i] < tab.basis[leaving]):
                    best, leaving = ratio, i
        if leaving < 0:
            return UNBOUNDED, Fraction(0), rc
        tab.pivot(leaving, entering)
        f = rc[entering]
        if f:
            row = tab.rows[leaving]
            for j in range(ncols):
                if row[j]:
                    rc[j] -= f * row[j]
            value += f * tab.rhs[leaving]


def solve_lp(lp: LinearProgram) -> LpResult:
    """Exact optimum of a small LP via two-phase simplex."""
    nvars = len(lp.objective)
    if nvars > MAX_VARIABLES:
        raise TooLarge(f"{nvars} variables exceeds the {MAX_VARIABLES} guard")
    bounds = lp.bounds if lp.bounds is not None else ((None, None),) * nvars
    obj = [_fr(c) for c in lp.objective]

    # variable transform to u >= 0: x_j = shift_j + sign_j * u_a (+ -u_b if free)
    col_of: list[tuple] = []  # per original var: ("pair", a, b) | ("lo", a, lo) | ("hi", a, hi)
    ncols = 0
    extra_rows: list[tuple] = []
    for j, (lo, hi) in enumerate(bounds):
        if lo is None and hi is None:
            col_of.append(("pair", ncols, ncols + 1))
            ncols += 2
        elif lo is not None:
            col_of.append(("lo", ncols, _fr(lo)))
            if hi is not None:
                extra_rows.append((j, _fr(hi) - _fr(lo)))
            ncols += 1
        else:
            col_of.append(("hi", ncols, _fr(hi)))
            ncols += 1

    def expand(coeffs: Sequence) -> tuple[list[Fraction], Fraction]:
        """Rewrite a row over x into a row over u; returns (row, rhs shift)."""
        row = [Fraction(0)] * ncols
        shift = Fraction(0)
        for j, c in enumerate(coeffs):
            c = _fr(c)
            if not c:
                continue
            kind = col_of[j]
            if kind[0] == "pair":
                row[kind[1]] += c
                row[kind[2]] -= c
            elif kind[0] == "lo":
                row[kind[1]] += c
                shift += c * kind[2]
            else:  # hi: x = hi - u
                row[kind[1]] -= c
                shift += c * kind[2]
        return row, shift

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    rels: list[str] = []
    origin: list[int] = []  # original constraint index (or -1 for bound rows)
    for idx, (coeffs, rel, b) in enumerate(lp.constraints):
        row, shift = expand(coeffs)
        rows.append(row)
        rhs.append(_fr(b) - shift)
        rels.append(rel)
        origin.append(idx)
    for j, ub in extra_rows:
        row = [Fraction(0)] * ncols
        row[col_of[j][1]] = Fraction(1)
        rows.append(row)
        rhs.append(ub)
        rels.append(LE)
        origin.append(-1)

    # slacks, sign-fix, artificials; every row i reads its dual from dual_col[i]
    m = len(rows)
    slack_cols = 0
    for rel in rels:
        if rel in (LE, GE):
            slack_cols += 1
    total = ncols + slack_cols + m  # worst case: artificial on every row
    for i in range(m):
        rows[i] = rows[i] + [Fraction(0)] * (total - ncols)
    next_col = ncols
    art_cols: list[int] = []
    dual_read: list[tuple[int, int]] = []  # (column, kind 0=slack 1=artificial)
    tab = _Tableau(rows, rhs)
    for i in range(m):
        if rels[i] == LE:
            rows[i][next_col] = Fraction(1)
            s_col = next_col
            next_col += 1
        elif rels[i] == GE:
            rows[i][next_col] = Fraction(-1)
            s_col = next_col
            next_col += 1
        else:
            s_col = -1
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
        if s_col >= 0 and rows[i][s_col] == 1:
            tab.basis[i] = s_col
            dual_read.append((s_col, 0))
        else:
            rows[i][next_col] = Fraction(1)
            art_cols.append(next_col)
            tab.basis[i] = next_col
            dual_read.append((next_col, 1))
            next_col += 1
    used = next_col
    for i in range(m):
        rows[i] = rows[i][:used]

    art_set = set(art_cols)
    if art_set:
        phase1 = [Fraction(1) if j in art_set else Fraction(0) for j in range(used)]
        status, value, rc = _run_simplex(tab, phase1)
        if status != OPTIMAL:  # pragma: no cover - phase 1 is always bounded
            raise AssertionError("phase-1 simplex cannot be unbounded")
        if value > 0:
            support = set()
            for i in range(m):
                col, kind = dual_read[i]
                y = (1 - rc[col]) if kind == 1 else -rc[col]
                if y != 0 and origin[i] >= 0:
                    support.add(origin[i])
            return LpResult(INFEASIBLE, farkas_rows=frozenset(support))
        # drive leftover artificials out of the basis where possible
        for i in range(m):
            if tab.basis[i] in art_set and tab.rhs[i] == 0:
                for j in range(used):
                    if j not in art_set and tab.rows[i][j] != 0:
                        tab.pivot(i, j)
                        break

    cost = [Fraction(0)] * used
    for j in range(nvars):
        kind = col_of[j]
        if kind[0] == "pair":
            cost[kind[1]] += obj[j]
            cost[kind[2]] -= obj[j]
        elif kind[0] == "lo":
            cost[kind[1]] += obj[j]
        else:
            cost[kind[1]] -= obj[j]
    status, value, _ = _run_simplex(tab, cost, banned=frozenset(art_set))
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED)

    uvals = [Fraction(0)] * used
    for i, b in enumerate(tab.basis):
        uvals[b] = tab.rhs[i]
    solution = []
    const_term = Fraction(0)
    for j in range(nvars):
        kind = col_of[j]
        if kind[0] == "pair":
            solution.append(uvals[kind[1]] - uvals[kind[2]])
        elif kind[0] == "lo":
            solution.append(kind[2] + uvals[kind[1]])
            const_term += obj[j] * kind[2]
        else:
            solution.append(kind[2] - uvals[kind[1]])
            const_term += obj[j] * kind[2]
    return LpResult(OPTIMAL, value + const_term, tuple(solution))


def solve_feasibility(constraints: Sequence, n_vars: int,
                      bounds: Optional[tuple] = None) -> LpResult:
    """Phase-1 only: feasibility of the constraint system (zero objective)."""
    lp = LinearProgram(tuple(Fraction(0) for _ in range(n_vars)),
                       tuple(constraints), bounds)
    return solve_lp(lp)


# ----------------------------------------------------------------------
# Best-first binary enumeration
# ----------------------------------------------------------------------

def _subsets_of_weight(wts: list[int], target: int):
    """All b with sum(w_i b_i) == target, lexicographically ascending."""
    n = len(wts)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + wts[i]
    b = [0] * n

    def rec(i: int, need: int):
        if need < 0 or need > suffix[i]:
            return
        if i == n:
            yield tuple(b)
            return
        b[i] = 0
        yield from rec(i + 1, need)
        b[i] = 1
        yield from rec(i + 1, need - wts[i])
        b[i] = 0

    yield from rec(0, target)


def minimize_over_binaries(weights: Sequence, oracle: Callable[[tuple], bool],
                           stop_weight=None, max_nodes: int = 1 << 20):
    """First feasible binary vector in order of increasing sum(w_i b_i).

    Ties are broken lexicographically (so the all-ones vector is tested
    last).  Enumeration is lazy by target weight: rational weights are
    scaled to integers, achievable subset sums are computed by bitset DP,
    and only vectors of each achievable weight are generated.  `stop_weight`
    aborts once every remaining vector weighs at least that much (returns
    None); `max_nodes` caps oracle calls.
    """
    wts = [_fr(w) for w in weights]
    if len(wts) > 64:
        raise TooLarge("more than 64 binary variables")
    if any(w < 0 for w in wts):
        raise TooLarge("weights must be nonnegative")
    scale = lcm(*(w.denominator for w in wts)) if wts else 1
    ints = [int(w * scale) for w in wts]
    total = sum(ints)
    if total > 10**7:
        raise TooLarge("scaled weight range too large to enumerate by value")

    achievable = 1
    for w in ints:
        achievable |= achievable << w
    stop_scaled = None if stop_weight is None else _fr(stop_weight) * scale
    tested = 0
    target = 0
    while target <= total:
        if not (achievable >> target) & 1:
            target += 1
            continue
        if stop_scaled is not None and target >= stop_scaled:
            return None
        for b in _subsets_of_weight(ints, target):
            tested += 1
            if tested > max_nodes:
                raise BudgetExceeded(f"enumeration exceeded {max_nodes} oracle calls")
            if oracle(b):
                value = sum(w for w, bit in zip(wts, b) if bit)
                return value, b
        target += 1
    raise NoFeasibleAssignment("no binary assignment satisfied the oracle")
