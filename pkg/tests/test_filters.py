import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stmcirc.compose import design_response, extract_metrics, isolation_notches
from stmcirc.errors import EmptyFeasibleSet, NoConvergence, NonPhysical
from stmcirc.filters import (
    REFERENCE_FILTER,
    LadderFilter,
    SynthesisSpec,
    abcd_sparams,
    bandwidth_for_df,
    chebyshev_g,
    damped_newton,
    filter_input_impedance,
    filter_sparams,
    golden_section_max,
    junction_yc,
    optimize_df,
    prototype_guess,
    synthesize_filter,
)

element = st.floats(0.1, 100.0)


def ladder(a, b, c, d):
    return LadderFilter(a * 1e-9, b * 1e-12, c * 1e-9, d * 1e-12)


@settings(max_examples=60, deadline=None)
@given(element, element, element, element, st.floats(0.2e9, 3e9))
def test_lossless_unitarity(a, b, c, d, f):
    s = filter_sparams(ladder(a, b, c, d), 50.0, f)
    assert abs(abs(s.r) ** 2 + abs(s.m) ** 2 - 1) < 1e-12
    assert abs(abs(s.t) ** 2 + abs(s.m) ** 2 - 1) < 1e-12
    assert abs(s.r * np.conj(s.m) + s.m * np.conj(s.t)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(element, element, element, element, st.floats(0.2e9, 3e9), st.none() | st.floats(5, 500))
def test_matches_abcd(a, b, c, d, f, q):
    filt = LadderFilter(a * 1e-9, b * 1e-12, c * 1e-9, d * 1e-12, q)
    s = filter_sparams(filt, 50.0, f)
    s11, s12, s21, s22 = abcd_sparams(filt, 50.0, f)
    assert abs(s.r - s11) < 1e-12 and abs(s.t - s22) < 1e-12
    assert abs(s.m - s21) < 1e-12 and abs(s12 - s21) < 1e-12


def test_transparent_when_resonant():
    f0 = 1e9
    w = 2 * math.pi * f0
    filt = LadderFilter(2e-9, 1 / (w * w * 2e-9), 30e-9, 1 / (w * w * 30e-9))
    s = filter_sparams(filt, 50.0, f0)
    assert abs(s.r) < 1e-12 and abs(s.t) < 1e-12 and abs(abs(s.m) - 1) < 1e-12


def test_lossy_filter_dissipates():
    filt = LadderFilter(*REFERENCE_FILTER.elements, q=50)
    s = filt.sparams(50.0, np.linspace(0.9e9, 1.1e9, 11))
    power = np.abs(s.r) ** 2 + np.abs(s.m) ** 2
    assert np.all(power < 1) and np.all(power > 0.5)


def test_nonphysical_elements():
    with pytest.raises(NonPhysical):
        LadderFilter(-1e-9, 1e-12, 1e-9, 1e-12)
    with pytest.raises(NonPhysical):
        LadderFilter(1e-9, math.inf, 1e-9, 1e-12)


def test_synthesis_spec():
    s = SynthesisSpec.around(1e9, 80e6)
    assert s.f_lo == pytest.approx(0.96e9) and s.df == pytest.approx(80e6)
    with pytest.raises(ValueError):
        SynthesisSpec.around(1e9, 0.0)
    with pytest.raises(ValueError):
        SynthesisSpec(1e9, 1e9)


def test_chebyshev_values():
    # standard tabulated 0.1 dB ripple values
    g1, g2 = chebyshev_g(0.1, 2)
    assert g1 == pytest.approx(0.8431, abs=2e-4)
    assert g2 == pytest.approx(0.6220, abs=2e-4)
    g = chebyshev_g(0.5, 3)
    assert g == pytest.approx([1.5963, 1.0967, 1.5963], abs=2e-4)


def test_prototype_guess_resonant():
    g = prototype_guess(1e9, 100e6, 50.0)
    w = 2 * math.pi * 1e9
    assert w * w * g.l1 * g.c1 == pytest.approx(1.0)
    assert w * w * g.l2 * g.c2 == pytest.approx(1.0)


def test_synthesis_residual(ref, anchored_filter):
    yc = junction_yc(ref)
    f = np.array([972e6, 1045e6])
    zm = filter_input_impedance(anchored_filter, np.conj(yc(f)), f)
    assert np.abs(zm - 50.0).max() < 1e-6


@pytest.mark.parametrize("df", [60e6, 80e6, 100e6])
def test_symmetric_synthesis_places_notches(ref, fc, df):
    filt = synthesize_filter(junction_yc(ref), SynthesisSpec.around(fc, df, 50.0))
    for f in (fc - df / 2, fc + df / 2):
        s = design_response(ref, filt, np.array([f - 1e6, f, f + 1e6]), fc).s
        assert abs(s.bwd[1]) < 10 ** (-40 / 20)


def test_reference_filter_notches(ref, fc):
    # the tabulated element values also produce two notches near the anchors
    resp = design_response(ref, REFERENCE_FILTER, np.linspace(0.9e9, 1.1e9, 4001), fc)
    notches = isolation_notches(resp, 40.0)
    assert min(abs(n - 972e6) for n in notches) < 5e6
    assert min(abs(n - 1045e6) for n in notches) < 5e6


def test_damped_newton_simple():
    x, res, _ = damped_newton(lambda x: np.array([x[0] ** 2 - 2, x[1] - 1]),
                              lambda x: np.array([[2 * x[0], 0], [0, 1]]), [1.0, 0.0], 1e-14)
    assert x[0] == pytest.approx(math.sqrt(2)) and res < 1e-14


def test_damped_newton_reports_residual():
    with pytest.raises(NoConvergence) as exc:
        damped_newton(lambda x: np.array([x[0] ** 2 + 1]), lambda x: np.array([[2 * x[0]]]), [1.0], 1e-12, max_iter=5)
    assert exc.value.residual >= 1.0


def test_golden_section_parabola():
    x, fx = golden_section_max(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, 60)
    assert x == pytest.approx(0.3, abs=1e-8)
    assert fx == pytest.approx(0.0, abs=1e-15)


def test_golden_section_ties_prefer_left():
    x, fx = golden_section_max(lambda x: 1.0, 0.0, 1.0, 20)
    assert fx == 1.0 and x < 0.5


def test_golden_section_deterministic():
    calls = []

    def fun(x):
        calls.append(x)
        return math.sin(5 * x)

    golden_section_max(fun, 0, 1, 25)
    first = list(calls)
    calls.clear()
    golden_section_max(fun, 0, 1, 25)
    assert calls == first and len(first) == 27


def test_optimize_df(ref, budget):
    opt = optimize_df(ref, budget)
    assert 0 < opt.df < 2 * ref.fm
    assert opt.bw <= opt.bound
    assert opt.bw >= bandwidth_for_df(ref, budget, 0.5 * ref.fm)[0]


def test_optimize_df_validates_range(ref, budget):
    with pytest.raises(ValueError):
        optimize_df(ref, budget, df_range=(10e6, 3 * ref.fm))


def test_optimize_df_empty(ref):
    from stmcirc.bound import SpecBudget

    strict = SpecBudget(3.0, 80.0, 14.33, 0.19)
    with pytest.raises(EmptyFeasibleSet):
        optimize_df(ref, strict, iterations=8)


def test_anchored_design_band(ref, fc, anchored_filter, budget):
    m = extract_metrics(design_response(ref, anchored_filter, center=fc), budget.alpha_db, budget.beta_db)
    assert m.band[0] < 972e6 and m.band[1] > 1045e6
    assert m.ix_min_db >= 20.0
