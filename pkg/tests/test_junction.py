import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stmcirc.errors import DegenerateJunction, InvalidModulationDepth, NoResonance
from stmcirc.junction import (
    JunctionParams,
    center_frequency,
    characteristic_admittance,
    characteristic_admittance_at,
    driven_transmission,
    input_admittance,
    junction_s,
    junction_y,
    matched_insertion_loss,
    sideband_admittances,
    sideband_coefficients,
    terminated_voltages,
)
from stmcirc.netcore import CyclicThreePort, Kind, Passivity, check_passivity


def reference_sidebands(p, f):
    # direct transcription of the one-sideband continued fraction
    w = 2 * np.pi * np.asarray(f, dtype=float)
    wm = 2 * np.pi * p.fm
    w0 = 1 / math.sqrt(p.l0 * p.c0)
    d = p.dc_ratio
    sigma = 1 / math.sqrt(1 - d * d)
    gamma = (2 / d) * (1 - 1 / math.sqrt(1 - d * d)) if d else 0.0
    lr = p.loss_rate

    def tank(x):
        return x * x - 1j * lr * x - sigma * w0 ** 2

    out = []
    for sgn in (1, -1):
        bracket = tank(w) - (w0 ** 4 * gamma ** 2 / 4) / tank(w + sgn * wm)
        out.append(-1j * w / (3 * p.l0) / bracket)
    return out


@pytest.mark.parametrize("d", [0.05, 0.3, 0.544, 0.9])
def test_coefficients_closed_form(d):
    k = sideband_coefficients(d)
    assert k.sigma == pytest.approx(1 / math.sqrt(1 - d * d), rel=1e-14)
    assert k.gamma == pytest.approx((2 / d) * (1 - 1 / math.sqrt(1 - d * d)), rel=1e-10)


def test_coefficients_small_depth_stable():
    k = sideband_coefficients(1e-9)
    assert k.gamma == pytest.approx(-1e-9, rel=1e-6)
    assert sideband_coefficients(0.0).gamma == 0.0


def test_reference_coefficient_values():
    k = sideband_coefficients(0.544)
    assert k.sigma == pytest.approx(1.1917, abs=1e-4)
    assert k.gamma == pytest.approx(-0.7048, abs=3e-3)


@pytest.mark.parametrize("d", [-0.1, 1.0, 1.5])
def test_invalid_depth(d):
    with pytest.raises(InvalidModulationDepth):
        sideband_coefficients(d)


def test_params_validation(ref):
    with pytest.raises(ValueError):
        ref.with_(l0=-1)
    with pytest.raises(ValueError):
        ref.with_(fm=2e9)
    with pytest.warns(RuntimeWarning):
        ref.with_(fm=0.6 * ref.f0)


def test_sidebands_match_reference(ref, band):
    ip, im = sideband_admittances(ref, band)
    rp, rm = reference_sidebands(ref, band)
    assert np.allclose(ip, rp, rtol=1e-11, atol=0)
    assert np.allclose(im, rm, rtol=1e-11, atol=0)


def test_common_mode_is_open(ref, band):
    y = junction_y(ref, band)
    assert np.abs(y.diag + y.fwd + y.bwd).max() < 1e-12 * np.abs(y.diag).max()


def test_unmodulated_is_reciprocal(ref, band):
    y = junction_y(ref.with_(dc_ratio=0.0), band)
    assert np.allclose(y.fwd, y.bwd, rtol=1e-13)


def test_reversed_modulation_swaps_directions(ref, band):
    y = junction_y(ref, band)
    yr = junction_y(ref.with_(fm=-ref.fm), band)
    assert np.allclose(y.fwd, yr.bwd, rtol=1e-12)
    assert np.allclose(y.bwd, yr.fwd, rtol=1e-12)


def test_scalar_and_array_agree(ref):
    ys = junction_y(ref, 1e9)
    ya = junction_y(ref, np.array([1e9]))
    assert isinstance(ys.diag, complex)
    assert abs(ys.fwd - ya.fwd[0]) <= 1e-14 * abs(ys.fwd)


def test_rejects_nonpositive_frequency(ref):
    with pytest.raises(ValueError):
        junction_y(ref, 0.0)


def test_lossless_is_antihermitian(ref, band):
    y = junction_y(ref.with_(q0=math.inf), band)
    assert check_passivity(y, tol=1e-12).status is Passivity.LOSSLESS


def test_lossy_is_passive(ref, band):
    assert check_passivity(junction_y(ref, band)).status in (Passivity.PASSIVE, Passivity.LOSSLESS)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.8e9, 1.2e9), st.floats(0.05, 0.9))
def test_characteristic_admittance_nulls_isolated_port(f, d):
    p = JunctionParams(25e-9, 1.2e-12, d, 110e6)
    y = junction_y(p, f)
    yc = characteristic_admittance(y)
    v = terminated_voltages(y, yc)
    assert abs(v[2]) <= 1e-9 * max(abs(v[0]), abs(v[1]))
    assert abs(driven_transmission(y, yc)) <= 1e-9


def test_driven_transmission_matches_dense_solve(ref):
    y = junction_y(ref, 0.97e9)
    for yt in (0.02, 0.01 + 0.005j):
        assert driven_transmission(y, yt) == pytest.approx(terminated_voltages(y, yt)[2], rel=1e-10)


def test_conjugate_match_lossless(ref, band):
    y = junction_y(ref.with_(q0=math.inf), band)
    yc = characteristic_admittance(y)
    assert np.allclose(input_admittance(y), np.conj(yc), rtol=1e-10)


def test_degenerate_junction():
    y = CyclicThreePort(0.01j, 0.02j, 0.0, Kind.ADMITTANCE)
    with pytest.raises(DegenerateJunction):
        characteristic_admittance(y)


def test_center_frequency(ref, fc):
    yc = characteristic_admittance_at(ref, fc)
    assert abs(yc.imag) < 1e-6 * abs(yc.real)
    assert yc.real > 0
    assert abs(fc - ref.f_res) < 0.5 * ref.fm


def test_center_requires_crossing(ref):
    with pytest.raises(NoResonance):
        center_frequency(ref, band=(1.3e9, 1.4e9))


def test_matched_il_small_for_reference(ref):
    assert 0 < matched_insertion_loss(ref) < 1.0


def test_junction_s_is_circulating(ref, fc):
    s = junction_s(ref, fc)
    assert abs(s.bwd) < 1e-2 < abs(s.fwd)
    assert s.ref_admittance == pytest.approx(1 / 50)


def test_monotone_loss_with_q(ref, fc):
    ils = [matched_insertion_loss(ref.with_(q0=q)) for q in (20, 50, 200)]
    assert ils[0] > ils[1] > ils[2]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert matched_insertion_loss(ref.with_(q0=math.inf)) == pytest.approx(0.0, abs=1e-9)


def test_sign_change_brackets_exact_zero():
    from stmcirc.junction import sign_change_brackets

    assert list(sign_change_brackets([-1.0, 0.0, 1.0])) == [1]
    assert list(sign_change_brackets([-1.0, 1.0, -1.0])) == [0, 1]
    assert list(sign_change_brackets([1.0, 2.0, 0.0])) == [1]
