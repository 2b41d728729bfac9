"""Inertia-type and Ratio-type bounds, their MILP/LP optimizers, closed forms."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from eigenbounds.algebra import Polynomial, make_field
from eigenbounds.errors import (
    AssumptionViolated,
    DegreeTooHigh,
    NotApplicable,
    NotRegular,
    TooFewEigenvalues,
)
from eigenbounds import graphs as gr
from eigenbounds import metrics as mt
from eigenbounds import spectral_bounds as sb
from eigenbounds.spectra import (
    Spectrum,
    city_block_spectrum,
    cayley_spectrum_abelian,
    phase_rotation_spectrum,
    spectrum_of_graph,
)

F2 = make_field(2)
F3 = make_field(3)
X = Polynomial.from_list([0, 1])


def complete_graph(q):
    adj = np.ones((q, q), dtype=np.uint8) - np.eye(q, dtype=np.uint8)
    return gr.Graph(list(range(q)), adj)


def test_rationalize():
    assert sb.rationalize(3) == 3
    r = sb.rationalize(0.1)
    assert abs(r - Fraction(1, 10)) < Fraction(1, 10**12)
    assert r.denominator <= 2**40


def test_inertia_type_bound_examples():
    g = complete_graph(3)
    spec = Spectrum((2, -1), (1, 2), exact=True)
    assert sb.inertia_type_bound(g, spec, X, 1).floored == 1
    # path on 3 vertices (city block m=3, n=1): min count is 2
    space = mt.CityBlockSpace(3, 1)
    g = gr.build_distance_graph(space)
    spec = city_block_spectrum(3, 1)
    assert sb.inertia_type_bound(g, spec, X, 1).floored == 2
    # the zero polynomial degenerates to n
    zero = Polynomial.from_list([0])
    assert sb.inertia_type_bound(g, spec, zero, 1).floored == 3


def test_inertia_type_degree_guard():
    g = complete_graph(3)
    spec = Spectrum((2, -1), (1, 2), exact=True)
    with pytest.raises(DegreeTooHigh):
        sb.inertia_type_bound(g, spec, Polynomial.from_list([0, 0, 1]), 1)


def test_inertia_type_scale_invariance():
    space = mt.PhaseRotationSpace(F3, 2)
    g = gr.build_distance_graph(space)
    spec = phase_rotation_spectrum(3, 2)
    p = Polynomial.from_list([Fraction(-1), Fraction(1, 2), Fraction(1, 3)])
    base = sb.inertia_type_bound(g, spec, p, 2).raw_value
    for c in (Fraction(2), Fraction(7, 3), Fraction(1, 5)):
        assert sb.inertia_type_bound(g, spec, p.scale(c), 2).raw_value == base


def test_k1_shortcut_equals_generic():
    """The closed-form k=1 path must equal the explicit enumeration."""
    cases = [phase_rotation_spectrum(3, 2), phase_rotation_spectrum(2, 4),
             phase_rotation_spectrum(4, 3), city_block_spectrum(4, 2)]
    for spec in cases:
        fast = sb.inertia_milp_walkreg(spec, 1, use_k1_shortcut=True)
        slow = sb.inertia_milp_walkreg(spec, 1, use_k1_shortcut=False)
        assert fast.floored == slow.floored, spec
    space = mt.CityBlockSpace(3, 2)
    g = gr.build_distance_graph(space)
    spec = city_block_spectrum(3, 2)
    fast = sb.inertia_milp(g, spec, 1, use_k1_shortcut=True)
    slow = sb.inertia_milp(g, spec, 1, use_k1_shortcut=False)
    assert fast.floored == slow.floored


@pytest.mark.parametrize("q,n,k,expect", [
    (3, 2, 1, 7), (2, 4, 1, 5), (3, 5, 2, 53)])
def test_inertia_walkreg_table_values(q, n, k, expect):
    spec = phase_rotation_spectrum(q, n)
    assert sb.inertia_milp_walkreg(spec, k).floored == expect


@pytest.mark.parametrize("m,n,k,expect", [
    (3, 2, 2, 3), (4, 3, 1, 32), (3, 1, 1, 2)])
def test_inertia_milp_city_block_values(m, n, k, expect):
    g = gr.build_distance_graph(mt.CityBlockSpace(m, n))
    spec = city_block_spectrum(m, n)
    assert sb.inertia_milp(g, spec, k).floored == expect


def test_inertia_milp_varshamov():
    space = mt.VarshamovSpace(4)
    g = gr.build_distance_graph(space)
    spec = spectrum_of_graph(g)
    assert sb.inertia_milp(g, spec, 3).floored == 2


@pytest.mark.parametrize("space,k", [
    (mt.PhaseRotationSpace(F3, 3), 2),
    (mt.BlockSpace(mt.BlockParams(F2, 4, ((1, 2), (3, 4)))), 1),
    (mt.CyclicBurstSpace(mt.CyclicBurstParams(F2, 5, 2)), 2),
], ids=("pr33", "block", "burst"))
def test_milp_matches_walkreg_on_walk_regular_graphs(space, k):
    g = gr.build_distance_graph(space)
    assert gr.is_k_partially_walk_regular(g, k)
    spec = cayley_spectrum_abelian(space.field.q, space.n, list(space.unit_sphere()))
    general = sb.inertia_milp(g, spec, k)
    walkreg = sb.inertia_milp_walkreg(spec, k)
    assert general.floored == walkreg.floored


def test_ratio_type_examples():
    # Hoffman on K_q: exactly 1
    for q in (3, 4, 5):
        spec = Spectrum((q - 1, -1), (1, q - 1), exact=True)
        rep = sb.ratio_type_bound(spec, X, Fraction(0), 1)
        assert rep.raw_value == 1
    # phase-rotation closed forms for k=1
    assert sb.ratio_type_bound(phase_rotation_spectrum(3, 2), X, Fraction(0), 1) \
        .raw_value == 3
    rep = sb.ratio_type_bound(phase_rotation_spectrum(2, 4), X, Fraction(0), 1)
    assert rep.raw_value == Fraction(2**3 * 3, 4)  # 2^{n-1}(n-1)/n


def test_ratio_type_guards():
    spec = Spectrum((2, -1), (1, 2), exact=True)
    with pytest.raises(NotRegular):
        sb.ratio_type_bound(spec, X, Fraction(0), 1, degrees=[2, 3])
    # p = -x has p(theta_0) < lambda(p)
    neg = Polynomial.from_list([0, -1])
    with pytest.raises(AssumptionViolated):
        sb.ratio_type_bound(spec, neg, Fraction(0), 1)


def test_ratio_alpha2_closed_examples():
    # q=2, n = 2 mod 4: 2^n/(n+2)
    assert sb.ratio_alpha2_closed(phase_rotation_spectrum(2, 6)).raw_value == \
        Fraction(2**6, 8)
    assert sb.ratio_alpha2_closed(phase_rotation_spectrum(3, 4)).floored == 6
    # q >= 3 with n < q reduces to q^{n-2}
    assert sb.ratio_alpha2_closed(phase_rotation_spectrum(5, 4)).raw_value == 25
    with pytest.raises(TooFewEigenvalues):
        sb.ratio_alpha2_closed(Spectrum((2, -1), (1, 2), exact=True))
    with pytest.raises(NotApplicable):
        sb.ratio_alpha2_closed(Spectrum((4, 1, 0), (1, 2, 2), exact=True))


def test_ratio_alpha3_closed_examples():
    spec = phase_rotation_spectrum(2, 7)
    assert sb.ratio_alpha3_closed(spec, 0).raw_value == Fraction(2**6, 8)
    spec = phase_rotation_spectrum(5, 4)
    delta = 5 * 4 * 3  # (n+1)(q-1)(q-2)
    assert sb.ratio_alpha3_closed(spec, delta).floored == 5
    with pytest.raises(TooFewEigenvalues):
        sb.ratio_alpha3_closed(Spectrum((4, 0, -4), (1, 6, 1), exact=True), 0)
    # theta_r = -1 threshold undefined
    with pytest.raises(NotApplicable):
        sb.ratio_alpha3_closed(Spectrum((9, 3, 1, -1), (1, 2, 2, 2), exact=True), 0)


def test_minor_polynomial_lp_examples():
    spec = phase_rotation_spectrum(3, 2)
    rep = sb.minor_polynomial_lp(spec, 1)
    assert rep.raw_value == 3  # Hoffman, Table row (3,2,1)
    assert sb.minor_polynomial_lp(phase_rotation_spectrum(3, 5), 3).floored == 6
    # k >= r: unconstrained LP, optimum m_0
    rep = sb.minor_polynomial_lp(phase_rotation_spectrum(2, 4), 3)
    assert rep.raw_value == 1 and "unconstrained" in rep.flags


def test_minor_lp_matches_alpha2_closed():
    for q, n in [(3, 4), (4, 4), (5, 4), (2, 6), (3, 5)]:
        spec = phase_rotation_spectrum(q, n)
        assert sb.minor_polynomial_lp(spec, 2).raw_value == \
            sb.ratio_alpha2_closed(spec).raw_value


def test_minor_lp_matches_closed_forms_on_other_regular_graphs():
    """The best-possible claims hold for any regular walk-regular graph, not
    just phase rotation: cross-check on block and burst instances."""
    spaces = [
        mt.BlockSpace(mt.BlockParams(F2, 6, ((1, 2), (3, 4), (5, 6)))),
        mt.BlockSpace(mt.BlockParams(F3, 4, ((1, 2), (3, 4)))),
        mt.CyclicBurstSpace(mt.CyclicBurstParams(F2, 6, 2)),
        mt.CyclicBurstSpace(mt.CyclicBurstParams(F2, 7, 2)),
    ]
    for space in spaces:
        g = gr.build_distance_graph(space)
        spec = cayley_spectrum_abelian(space.field.q, space.n,
                                       list(space.unit_sphere()))
        if spec.r >= 2:
            assert sb.minor_polynomial_lp(spec, 2).raw_value == \
                sb.ratio_alpha2_closed(spec).raw_value, space.name
        if spec.r >= 3:
            delta = gr.triangle_delta(g)
            assert sb.minor_polynomial_lp(spec, 3).raw_value == \
                sb.ratio_alpha3_closed(spec, delta).raw_value, space.name


def test_bound_monotonicity_soft_warning(capsys):
    """bound(k+1) <= bound(k) is not a theorem; report, never fail."""
    spec = phase_rotation_spectrum(3, 4)
    values = [sb.inertia_milp_walkreg(spec, k).floored for k in (1, 2, 3)]
    for k, (a, b) in enumerate(zip(values, values[1:]), start=1):
        if b > a:
            print(f"note: inertia bound not monotone at k={k}: {a} -> {b}")
    assert values  # the check above is informational only


def test_phase_rotation_closed_bound_examples():
    assert sb.phase_rotation_closed_bound(2, 6, 2).raw_value == 8
    assert sb.phase_rotation_closed_bound(2, 7, 3).raw_value == 8
    assert sb.phase_rotation_closed_bound(3, 2, 1).raw_value == 3
    with pytest.raises(NotApplicable):
        sb.phase_rotation_closed_bound(2, 4, 3)  # k=3, q=2 needs n >= 5
    with pytest.raises(NotApplicable):
        sb.phase_rotation_closed_bound(3, 2, 4)


def test_bound_report_json():
    rep = sb.phase_rotation_closed_bound(2, 4, 1)
    d = rep.as_json_dict()
    assert d["raw"] == "6" and d["floored"] == 6 and d["exact"] is True
    rep2 = sb.ratio_alpha2_closed(phase_rotation_spectrum(3, 5))
    assert rep2.as_json_dict()["raw"] == "81/5"
