import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stmcirc.checks import random_passive_inputs
from stmcirc.compose import (
    CirculatorResponse,
    compose_direct,
    compose_direct_dense,
    compose_mason,
    design_response,
    extract_metrics,
    isolation_notches,
    junction_response,
)
from stmcirc.errors import NoBand, SingularGraph
from stmcirc.junction import junction_s
from stmcirc.netcore import THROUGH, CyclicThreePort, Kind, TwoPortS


def test_through_filter_is_identity(ref, band):
    s = junction_s(ref, band)
    out = compose_mason(s, THROUGH)
    assert np.array_equal(out.diag, s.diag)
    assert np.array_equal(out.fwd, s.fwd) and np.array_equal(out.bwd, s.bwd)


def test_total_reflection(ref):
    s = junction_s(ref, 1e9)
    r = 0.6 - 0.8j
    out = compose_mason(s, TwoPortS(r, 0.3, 0.0))
    assert out.diag == r and out.fwd == 0 and out.bwd == 0
    dense = compose_direct_dense(s, TwoPortS(r, 0.3, 0.0))
    assert np.allclose(dense, r * np.eye(3))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_mason_equals_direct(seed):
    j, f = random_passive_inputs(np.random.default_rng(seed), 20)
    a = compose_mason(j, f).dense()
    b = compose_direct_dense(j, f)
    assert np.abs(a - b).max() <= 1e-10 * np.abs(b).max()


def test_direct_result_is_cyclic():
    j, f = random_passive_inputs(np.random.default_rng(3), 50)
    out = compose_direct(j, f)
    assert np.allclose(out.dense(), compose_direct_dense(j, f), atol=1e-14)


def test_composition_preserves_passivity():
    j, f = random_passive_inputs(np.random.default_rng(7), 500)
    sv = np.linalg.svd(compose_mason(j, f).dense(), compute_uv=False)
    assert sv.max() <= 1 + 1e-9


def test_singular_graph():
    # a lossless loop with unit gain around the port self-loop
    j = CyclicThreePort(1.0, 0.0, 0.0, Kind.SCATTERING, 0.02)
    with pytest.raises(SingularGraph):
        compose_mason(j, TwoPortS(0.0, 1.0, 0.0))


def test_reversal_swaps_transmission(ref, anchored_filter, band, fc):
    a = design_response(ref, anchored_filter, band, fc)
    b = design_response(ref.with_(fm=-ref.fm), anchored_filter, band, fc)
    assert np.allclose(np.abs(a.s.fwd), np.abs(b.s.bwd), rtol=1e-10)
    assert np.allclose(np.abs(a.s.bwd), np.abs(b.s.fwd), rtol=1e-10)


def test_through_metrics_equal_bare(ref, band, fc):
    bare = extract_metrics(junction_response(ref, band, fc), 3, 20)

    class Through:
        def sparams(self, z0, f):
            return TwoPortS(np.zeros_like(f), np.zeros_like(f), np.ones_like(f))

    thru = extract_metrics(design_response(ref, Through(), band, fc), 3, 20)
    assert bare == thru


def brickwall(freqs, lo, hi, inside_db=-30.0):
    ix = np.where((freqs >= lo) & (freqs <= hi), 10 ** (inside_db / 20), 1.0) + 0j
    il = np.full_like(ix, 0.9)
    return CirculatorResponse(freqs, CyclicThreePort(0.1 + 0 * ix, il, ix, Kind.SCATTERING, 0.02), 1e9)


def test_brickwall_metrics():
    f = np.linspace(0.8e9, 1.2e9, 4001)
    m = extract_metrics(brickwall(f, 0.95e9, 1.05e9), 3, 20)
    assert m.bw_frac == pytest.approx(0.10, abs=2e-4)
    assert m.ix_min_db == pytest.approx(30.0)
    assert m.band[0] <= 1e9 <= m.band[1]


def test_no_band():
    f = np.linspace(0.8e9, 1.2e9, 101)
    with pytest.raises(NoBand):
        extract_metrics(brickwall(f, 0.95e9, 1.05e9, inside_db=-10.0), 3, 20)


def test_il_limited_band_is_narrower(ref, anchored_filter, fc):
    resp = design_response(ref, anchored_filter, center=fc)
    m = extract_metrics(resp, 3, 20)
    m_il = extract_metrics(resp, 1.0, 20, il_limited=True)
    assert m_il.bw_frac < m.bw_frac
    assert m_il.il_range_db[1] <= 1.0 + 0.05


def test_grid_must_increase():
    with pytest.raises(ValueError):
        CirculatorResponse(np.array([2.0, 1.0]), CyclicThreePort(np.zeros(2), np.zeros(2), np.zeros(2)), 1.5)


def test_notches_found(ref, anchored_filter, fc):
    resp = design_response(ref, anchored_filter, np.linspace(0.9e9, 1.1e9, 4001), fc)
    deep = isolation_notches(resp, 50.0)
    for anchor in (972e6, 1045e6):
        assert min(abs(n - anchor) for n in deep) < 1e6
