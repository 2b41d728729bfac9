"""Inertia-type and Ratio-type eigenvalue bounds on the k-independence
number, their optimal-polynomial MILP/LP formulations, and the closed
forms for the phase-rotation graph.

MILP conventions
----------------
The optimal-polynomial search minimizes m.b over binary patterns b, where
b_j = 0 forces p(theta_j) <= -1 and b_j = 1 leaves theta_j unconstrained.
The big-M / epsilon pair of the original mixed-integer formulation is
eliminated: every remaining constraint is homogeneous in the coefficients
of p, so any p with strictly negative values at the selected eigenvalues
rescales to values <= -1.  Patterns are enumerated best-first by weight
(exact optimum, early exit), each one checked by an exact-rational
feasibility LP.  Infeasible patterns donate their Farkas row support as a
"core": any later pattern whose zero-set contains a known core is skipped
without an LP call.

Floating spectra (city block, Varshamov) enter the LPs through eigenvalue
powers rationalized at denominator 2^40 (error < 1e-12); the winning
polynomial is re-checked in floating point with slack 1e-6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .algebra import Polynomial, poly_eval
from .errors import (
    AssumptionViolated,
    DegreeTooHigh,
    InternalError,
    NotApplicable,
    NotRegular,
    NumericalInconsistency,
    TooFewEigenvalues,
)
from .graphs import Graph, _diag_powers
from .lp_kernel import EQ, GE, INFEASIBLE, LE, OPTIMAL, LinearProgram, solve_feasibility, solve_lp
from .spectra import Spectrum

RATIONALIZE_DENOM = 1 << 40  # fixed power-of-two denominator, error < 1e-12
FLOAT_VERIFY_SLACK = 1e-6
FLOAT_COUNT_TOL = 1e-9


def rationalize(x) -> Fraction:
    """Exact values pass through; floats are rounded to denominator 2^40."""
    if isinstance(x, float):
        return Fraction(round(x * RATIONALIZE_DENOM), RATIONALIZE_DENOM)
    return Fraction(x)


@dataclass(frozen=True)
class BoundReport:
    bound_name: str
    raw_value: object  # Fraction or float
    k: int
    exact: bool
    inputs: dict = dc_field(default_factory=dict)
    witness: Optional[dict] = None
    flags: tuple[str, ...] = ()

    @property
    def floored(self) -> int:
        return math.floor(self.raw_value)

    def as_json_dict(self) -> dict:
        raw = self.raw_value
        if isinstance(raw, Fraction):
            raw_repr = str(raw.numerator) if raw.denominator == 1 else f"{raw.numerator}/{raw.denominator}"
        else:
            raw_repr = float(raw)
        return {"bound": self.bound_name, "raw": raw_repr, "floored": self.floored,
                "k": self.k, "exact": self.exact, "flags": list(self.flags)}


# ----------------------------------------------------------------------
# Inertia-type bound: theorem evaluator
# ----------------------------------------------------------------------

def inertia_type_bound(g: Graph, spectrum: Spectrum, p: Polynomial, k: int,
                       inputs: Optional[dict] = None) -> BoundReport:
    """alpha_k <= min(#{i: p(lam_i) >= w(p)}, #{i: p(lam_i) <= W(p)}).

    Counts run over the full eigenvalue multiset (sums of multiplicities
    over qualifying distinct values); W(p), w(p) are the extreme diagonal
    entries of p(A), computed exactly from integer matrix powers.
    """
    if p.degree > k:
        raise DegreeTooHigh(f"deg {p.degree} > k={k}")
    diags = _diag_powers(g.adjacency, len(p.coeffs) - 1)
    n = g.n_vertices
    diag_vals = [sum(a * int(d[v]) for a, d in zip(p.coeffs, diags)) for v in range(n)]
    w_p, big_w = min(diag_vals), max(diag_vals)

    def p_at(theta):
        return poly_eval(p, float(theta)) if not spectrum.exact else poly_eval(p, Fraction(theta))

    count_ge = 0
    count_le = 0
    for theta, mult in zip(spectrum.distinct, spectrum.mults):
        val = p_at(theta)
        if spectrum.exact:
            ge, le = val >= w_p, val <= big_w
        else:
            slack = FLOAT_COUNT_TOL * max(1.0, abs(val))
            ge, le = val >= float(w_p) - slack, val <= float(big_w) + slack
        count_ge += mult if ge else 0
        count_le += mult if le else 0
    bound = min(count_ge, count_le)
    return BoundReport("inertia_type", Fraction(bound), k, exact=True,
                       inputs=inputs or {}, witness={"polynomial": p.coeffs,
                                                     "W": big_w, "w": w_p})


# ----------------------------------------------------------------------
# Inertia-type MILPs
# ----------------------------------------------------------------------

def _eigen_power_table(spectrum: Spectrum, k: int) -> list[list[Fraction]]:
    """T[j][i] = theta_j^i, exact or rationalized power by power."""
    table = []
    for theta in spectrum.distinct:
        if spectrum.exact:
            t = Fraction(theta)
            table.append([t**i for i in range(k + 1)])
        else:
            table.append([rationalize(float(theta) ** i) for i in range(k + 1)])
    return table


def _k1_inertia_value(spectrum: Spectrum) -> tuple[int, dict]:
    """Exact optimum of both inertia MILPs for k=1.

    Degree-1 polynomials have constant diagonal a_0, which every variant
    pins to 0, so the optimum is min over sign sides of the multiplicity
    mass: the classical inertia bound.
    """
    tol = 0.0 if spectrum.exact else FLOAT_COUNT_TOL
    neg = sum(m for t, m in zip(spectrum.distinct, spectrum.mults) if t < -tol)
    pos = sum(m for t, m in zip(spectrum.distinct, spectrum.mults) if t > tol)
    total = spectrum.n
    value = total - max(neg, pos)
    if neg >= pos:
        side, extreme = "negative", max((t for t in spectrum.distinct if t < -tol), default=None)
    else:
        side, extreme = "positive", min((t for t in spectrum.distinct if t > tol), default=None)
    coeff = Fraction(0) if extreme is None else -1 / rationalize(extreme)
    witness = {"polynomial": (Fraction(0), coeff), "excluded_side": side}
    return value, witness


FLOAT_FILTER_MARGIN = 1e-6


class _PatternOracle:
    """Feasibility oracle over zero-patterns with Farkas-core pruning.

    For float spectra a fast slack-maximizing float LP screens each
    pattern first: clearly infeasible patterns (best slack < -margin) are
    rejected without an exact solve.  Every accepted pattern is confirmed
    by the exact-rational LP, so a winning value is always exact on the
    rationalized data; a wrong float rejection could only weaken (raise)
    the reported bound, never break its validity.
    """

    def __init__(self, base_rows: list, eig_table: list[list[Fraction]],
                 n_vars: int, float_filter: bool = False):
        self.base_rows = base_rows
        self.eig_table = eig_table
        self.n_vars = n_vars
        self.cores: list[int] = []
        self.last_solution = None
        self.lp_calls = 0
        self._filter = None
        if float_filter:
            self._filter = _SlackFilter(base_rows, eig_table, n_vars)

    def __call__(self, b: tuple) -> bool:
        zero_mask = 0
        for j, bit in enumerate(b):
            if not bit:
                zero_mask |= 1 << j
        for core in self.cores:
            if core & zero_mask == core:
                return False
        if self._filter is not None and self._filter.clearly_infeasible(b):
            return False
        rows = list(self.base_rows)
        eig_row_of: dict[int, int] = {}
        for j, bit in enumerate(b):
            if not bit:
                eig_row_of[len(rows)] = j
                rows.append((tuple(self.eig_table[j]), LE, Fraction(-1)))
        self.lp_calls += 1
        result = solve_feasibility(rows, self.n_vars)
        if result.status == INFEASIBLE:
            core = 0
            for idx in result.farkas_rows or ():
                if idx in eig_row_of:
                    core |= 1 << eig_row_of[idx]
            if core:
                self.cores.append(core)
            return False
        self.last_solution = result.solution
        return True

    def min_norm_witness(self, b: tuple):
        """Re-solve the winning pattern minimizing sum |a_i|.

        Simplex vertices of the bare feasibility LP can carry huge
        coefficients that defeat the floating re-check; the minimum-norm
        solution is the natural robust witness.
        """
        nv = self.n_vars
        rows = []
        for coeffs, rel, rhs in self.base_rows:
            rows.append((tuple(coeffs) + tuple(-c for c in coeffs), rel, rhs))
        for j, bit in enumerate(b):
            if not bit:
                t = tuple(self.eig_table[j])
                rows.append((t + tuple(-c for c in t), LE, Fraction(-1)))
        objective = (Fraction(1),) * (2 * nv)
        bounds = ((Fraction(0), None),) * (2 * nv)
        result = solve_lp(LinearProgram(objective, tuple(rows), bounds))
        if result.status != OPTIMAL:  # pragma: no cover - pattern already confirmed
            raise InternalError("min-norm re-solve of a feasible pattern failed")
        sol = result.solution
        return tuple(sol[i] - sol[nv + i] for i in range(nv))


class _SlackFilter:
    """Float LP screening: maximize the worst slack of a pattern's system."""

    def __init__(self, base_rows: list, eig_table: list[list[Fraction]], n_vars: int):
        import numpy as _np

        self.n_vars = n_vars
        eq_rows = [r for r in base_rows if r[1] == EQ]
        ge_rows = [r for r in base_rows if r[1] == GE]
        self.a_eq = _np.array([[float(c) for c in r[0]] for r in eq_rows]) \
            if eq_rows else None
        self.b_eq = _np.array([float(r[2]) for r in eq_rows]) if eq_rows else None
        # GE rows become -coeffs . a + s <= 0 (slack s shared)
        self.ge = _np.array([[-float(c) for c in r[0]] for r in ge_rows]) \
            if ge_rows else _np.zeros((0, n_vars))
        self.eig = _np.array([[float(c) for c in row] for row in eig_table])

    def clearly_infeasible(self, b: tuple) -> bool:
        import numpy as _np
        from scipy.optimize import linprog

        zero = [j for j, bit in enumerate(b) if not bit]
        n_ge = self.ge.shape[0]
        rows = _np.zeros((n_ge + len(zero), self.n_vars + 1))
        rhs = _np.zeros(n_ge + len(zero))
        if n_ge:
            rows[:n_ge, :-1] = self.ge
            rows[:n_ge, -1] = 1.0
        for t, j in enumerate(zero):
            rows[n_ge + t, :-1] = self.eig[j]
            rows[n_ge + t, -1] = 1.0
            rhs[n_ge + t] = -1.0
        a_eq = b_eq = None
        if self.a_eq is not None:
            a_eq = _np.hstack([self.a_eq, _np.zeros((self.a_eq.shape[0], 1))])
            b_eq = self.b_eq
        cost = _np.zeros(self.n_vars + 1)
        cost[-1] = -1.0  # maximize the shared slack
        bounds = [(None, None)] * self.n_vars + [(None, 1.0)]
        res = linprog(cost, A_ub=rows, b_ub=rhs, A_eq=a_eq, b_eq=b_eq,
                      bounds=bounds, method="highs")
        if not res.success:
            return False  # inconclusive: fall through to the exact LP
        best_slack = -res.fun
        return best_slack < -FLOAT_FILTER_MARGIN


def _float_verify(spectrum: Spectrum, coeffs: Sequence[Fraction], b: tuple) -> None:
    """Re-evaluate the winning polynomial at float eigenvalues (slack 1e-6)."""
    p = Polynomial(tuple(coeffs))
    for theta, bit in zip(spectrum.distinct, b):
        if not bit and poly_eval(p, float(theta)) > -1 + FLOAT_VERIFY_SLACK:
            raise NumericalInconsistency(
                f"rationalized MILP winner fails float re-check at theta={theta}")


def _best_first_milp(spectrum: Spectrum, oracle_factory, k: int,
                     max_nodes: int) -> tuple[int, dict]:
    """Shared driver: min over oracle instances of best-first pattern search."""
    from .lp_kernel import minimize_over_binaries

    mults = list(spectrum.mults)
    best_value: Optional[int] = None
    best_witness: dict = {}
    for label, oracle in oracle_factory():
        found = minimize_over_binaries(mults, oracle, stop_weight=best_value,
                                       max_nodes=max_nodes)
        if found is None:
            continue
        value, b = found
        if best_value is None or value < best_value:
            best_value = int(value)
            coeffs = oracle.last_solution
            if not spectrum.exact and coeffs is not None:
                coeffs = oracle.min_norm_witness(b)
                _float_verify(spectrum, coeffs, b)
            best_witness = {"pattern": b, "polynomial": coeffs, "vertex_class": label}
    if best_value is None:  # pragma: no cover - all-ones is always feasible
        raise InternalError("no feasible pattern found")
    return best_value, best_witness


def inertia_milp(g: Graph, spectrum: Spectrum, k: int,
                 max_nodes: int = 1 << 20, use_k1_shortcut: bool = True,
                 inputs: Optional[dict] = None) -> BoundReport:
    """Optimal-polynomial Inertia-type bound for arbitrary graphs.

    Runs the per-vertex program for one representative of every distinct
    diagonal-vector class ((A^0)_uu..(A^k)_uu determines the program) and
    takes the minimum.
    """
    if k == 1 and use_k1_shortcut:
        value, witness = _k1_inertia_value(spectrum)
        return BoundReport("inertia_milp", Fraction(value), k, exact=spectrum.exact,
                           inputs=inputs or {}, witness=witness)
    diags = _diag_powers(g.adjacency, k)
    n = g.n_vertices
    diag_vecs = [tuple(int(d[v]) for d in diags) for v in range(n)]
    classes = sorted(set(diag_vecs))
    eig_table = _eigen_power_table(spectrum, k)

    def factory():
        for u_vec in classes:
            rows = [(tuple(Fraction(x) for x in u_vec), EQ, Fraction(0))]
            for other in classes:
                if other != u_vec:
                    rows.append((tuple(Fraction(x) for x in other), GE, Fraction(0)))
            yield u_vec, _PatternOracle(rows, eig_table, k + 1,
                                        float_filter=not spectrum.exact)

    value, witness = _best_first_milp(spectrum, factory, k, max_nodes)
    return BoundReport("inertia_milp", Fraction(value), k, exact=spectrum.exact,
                       inputs=inputs or {}, witness=witness)


def inertia_milp_walkreg(spectrum: Spectrum, k: int,
                         max_nodes: int = 1 << 20, use_k1_shortcut: bool = True,
                         inputs: Optional[dict] = None) -> BoundReport:
    """Optimal-polynomial Inertia-type bound from the spectrum alone.

    Valid for k-partially walk-regular graphs (caller-verified): the
    constant diagonal of p(A) equals (1/n) sum m_i p(theta_i), so pinning
    it to zero is the single constraint sum_i m_i p(theta_i) = 0.
    """
    if k == 1 and use_k1_shortcut:
        value, witness = _k1_inertia_value(spectrum)
        return BoundReport("inertia_milp_walkreg", Fraction(value), k,
                           exact=spectrum.exact, inputs=inputs or {}, witness=witness)
    eig_table = _eigen_power_table(spectrum, k)
    trace_row = tuple(
        sum(Fraction(m) * eig_table[j][i] for j, m in enumerate(spectrum.mults))
        for i in range(k + 1))

    def factory():
        yield None, _PatternOracle([(trace_row, EQ, Fraction(0))], eig_table, k + 1,
                                   float_filter=not spectrum.exact)

    value, witness = _best_first_milp(spectrum, factory, k, max_nodes)
    return BoundReport("inertia_milp_walkreg", Fraction(value), k,
                       exact=spectrum.exact, inputs=inputs or {}, witness=witness)


# ----------------------------------------------------------------------
# Ratio-type bound
# ----------------------------------------------------------------------

def ratio_type_bound(spectrum: Spectrum, p: Polynomial, big_w, k: int,
                     degrees: Optional[Sequence[int]] = None,
                     inputs: Optional[dict] = None) -> BoundReport:
    """alpha_k <= n (W(p) - lambda(p)) / (p(theta_0) - lambda(p)).

    W is the max diagonal of p(A), supplied by the caller (for walk-regular
    graphs it is (1/n) sum m_i p(theta_i)); lambda(p) minimizes p over the
    distinct eigenvalues theta_1..theta_r.
    """
    if degrees is not None and len(set(int(d) for d in degrees)) > 1:
        raise NotRegular("ratio-type bound requires a regular graph")
    if p.degree > k:
        raise DegreeTooHigh(f"deg {p.degree} > k={k}")
    if spectrum.r < 1:
        raise TooFewEigenvalues("need at least two distinct eigenvalues")
    exact = spectrum.exact
    conv = (lambda t: Fraction(t)) if exact else float
    p_top = poly_eval(p, conv(spectrum.distinct[0]))
    lam = min(poly_eval(p, conv(t)) for t in spectrum.distinct[1:])
    big_w = Fraction(big_w) if exact else float(big_w)
    if not p_top > lam:
        raise AssumptionViolated("p(lambda_1) > lambda(p) fails")
    value = spectrum.n * (big_w - lam) / (p_top - lam)
    return BoundReport("ratio_type", value, k, exact=exact, inputs=inputs or {},
                       witness={"polynomial": p.coeffs, "lambda_p": lam, "W": big_w})


def ratio_alpha2_closed(spectrum: Spectrum, inputs: Optional[dict] = None) -> BoundReport:
    """Best degree-2 Ratio-type bound: pivot on the largest eigenvalue <= -1."""
    if spectrum.r < 2:
        raise TooFewEigenvalues("alpha_2 closed form needs r >= 2")
    conv = (lambda t: Fraction(t)) if spectrum.exact else float
    theta = [conv(t) for t in spectrum.distinct]
    idx = next((i for i, t in enumerate(theta) if t <= -1), None)
    if idx is None or idx == 0:
        raise NotApplicable("no eigenvalue <= -1 below theta_0")
    t0, ti, tim1 = theta[0], theta[idx], theta[idx - 1]
    value = spectrum.n * (t0 + ti * tim1) / ((t0 - ti) * (t0 - tim1))
    return BoundReport("ratio_alpha2", value, 2, exact=spectrum.exact,
                       inputs=inputs or {}, witness={"theta_i": ti, "theta_im1": tim1})


def ratio_alpha3_closed(spectrum: Spectrum, delta: int,
                        inputs: Optional[dict] = None) -> BoundReport:
    """Best degree-3 Ratio-type bound; delta = max diagonal of A^3."""
    if spectrum.r < 3:
        raise TooFewEigenvalues("alpha_3 closed form needs r >= 3")
    conv = (lambda t: Fraction(t)) if spectrum.exact else float
    theta = [conv(t) for t in spectrum.distinct]
    t0, tr = theta[0], theta[-1]
    if tr == -1:
        raise NotApplicable("theta_r = -1 makes the threshold undefined")
    threshold = -(t0 * t0 + t0 * tr - delta) / (t0 * (tr + 1))
    ge = [i for i, t in enumerate(theta) if t >= threshold]
    if not ge:
        raise NotApplicable("no eigenvalue above the threshold")
    s = max(ge)  # smallest eigenvalue >= threshold (inclusive ties)
    if s + 1 > spectrum.r:
        raise NotApplicable("theta_{s+1} does not exist")
    ts, ts1 = theta[s], theta[s + 1]
    num = delta - t0 * (ts + ts1 + tr) - ts * ts1 * tr
    den = (t0 - ts) * (t0 - ts1) * (t0 - tr)
    value = spectrum.n * num / den
    return BoundReport("ratio_alpha3", value, 3, exact=spectrum.exact,
                       inputs=inputs or {},
                       witness={"theta_s": ts, "theta_s1": ts1, "threshold": threshold})


def minor_polynomial_lp(spectrum: Spectrum, k: int,
                        inputs: Optional[dict] = None) -> BoundReport:
    """Optimal Ratio-type bound via the minor-polynomial LP.

    Variables x_i = f(theta_i) with x_0 = 1, x_i >= 0; the requirement
    deg f <= k is expressed by vanishing Newton divided differences
    f[theta_0..theta_s] = 0 for s = k+1..r, expanded symbolically into
    linear forms.  The objective sum m_i x_i is the bound.  For k >= r the
    constraint set is empty and the optimum is m_0 (a valid bound: the
    graph's diameter is at most r, so G^k is complete).
    """
    r = spectrum.r
    theta = [rationalize(t) for t in spectrum.distinct]
    if len(set(theta)) != len(theta):
        raise NumericalInconsistency("rationalized eigenvalues collide")
    m0 = Fraction(spectrum.mults[0])
    flags = ()
    if k >= r:
        flags = ("unconstrained",)
    # dd[i][j] = coefficient vector (over x_0..x_r) of f[theta_i..theta_j]
    dd: dict[tuple[int, int], list[Fraction]] = {}
    for i in range(r + 1):
        vec = [Fraction(0)] * (r + 1)
        vec[i] = Fraction(1)
        dd[(i, i)] = vec
    for span in range(1, r + 1):
        for i in range(0, r + 1 - span):
            j = i + span
            hi, lo = dd[(i + 1, j)], dd[(i, j - 1)]
            denom = theta[j] - theta[i]
            dd[(i, j)] = [(a - b) / denom for a, b in zip(hi, lo)]
    constraints = []
    for s in range(k + 1, r + 1):
        vec = dd[(0, s)]
        constraints.append((tuple(vec[1:]), EQ, -vec[0]))
    objective = tuple(Fraction(m) for m in spectrum.mults[1:])
    bounds = tuple((Fraction(0), None) for _ in range(r))
    result = solve_lp(LinearProgram(objective, tuple(constraints), bounds))
    if result.status != OPTIMAL:
        raise InternalError(f"minor-polynomial LP is {result.status}; "
                            "the interpolating minor polynomial is always feasible")
    value = result.value + m0
    witness = {"values": (Fraction(1),) + tuple(result.solution)}
    return BoundReport("ratio_minor_lp", value, k, exact=spectrum.exact,
                       inputs=inputs or {}, witness=witness, flags=flags)


# ----------------------------------------------------------------------
# Phase-rotation closed forms
# ----------------------------------------------------------------------

def phase_rotation_closed_bound(q: int, n: int, k: int,
                                inputs: Optional[dict] = None) -> BoundReport:
    """Closed-form optimal Ratio-type bounds for the phase-rotation graph,
    k in {1, 2, 3}; raises NotApplicable outside each formula's range."""
    F = Fraction
    if k == 1:
        if n < 2:
            raise NotApplicable("k=1 closed form needs n >= 2")
        if q == 2 and n % 2 == 0:
            value = F(2**(n - 1) * (n - 1), n)
        else:
            value = F(q**(n - 1))
    elif k == 2:
        if q == 2:
            if n < 3:
                raise NotApplicable("k=2, q=2 closed form needs n >= 3")
            mod = n % 4
            if mod == 0:
                value = F(2**n * (n - 2), n * (n + 4))
            elif mod == 1:
                value = F(2**n * (n - 3), (n + 3) * (n - 1))
            elif mod == 2:
                value = F(2**n, n + 2)
            else:
                value = F(2**n, n + 5)
        else:
            if n < 2:
                raise NotApplicable("k=2, q>=3 closed form needs n >= 2")
            f = n // q
            num = n * (n + 1) + f * q * (-2 - 2 * n + q + f * q)
            value = F(q**(n - 2) * num, (n - f) * (n + 1 - f))
    elif k == 3:
        if q == 2:
            if n < 5:
                raise NotApplicable("k=3, q=2 closed form needs n >= 5")
            mod = n % 4
            if mod == 0:
                value = F(2**(n - 1) * (n * n - n + 4), n * n * (n + 4))
            elif mod == 1:
                value = F(2**(n - 1) * (n - 3), (n - 1) * (n + 3))
            elif mod == 2:
                value = F(2**(n - 1) * (n - 5), (n + 2) * (n - 2))
            else:
                value = F(2**(n - 1), n + 1)
        else:
            if n < 3:
                raise NotApplicable("k=3, q>=3 closed form needs n >= 3")
            c = -((1 - n) // q)  # ceil((n-1)/q)
            fl = (1 - n) // q    # floor((1-n)/q) = -c
            num = n * (n + 2 * q - 1) + q * c * (-2 * n - q + q * c)
            den = q**3 * (n + fl) * (n + 1 + fl)
            value = F(q**n * num, den)
    else:
        raise NotApplicable("closed forms exist for k in {1, 2, 3} only")
    return BoundReport("phase_rotation_closed", value, k, exact=True,
                       inputs=inputs or dict(q=q, n=n))
