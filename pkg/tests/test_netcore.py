import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stmcirc.errors import SingularConversion
from stmcirc.netcore import (
    THROUGH,
    CyclicThreePort,
    Kind,
    Passivity,
    TwoPortS,
    check_passivity,
    db,
    hermitian_eigenvalues,
    s_to_y,
    y_to_s,
)

cplx = st.complex_numbers(max_magnitude=0.6, allow_nan=False, allow_infinity=False)


def test_dense_layout():
    s = CyclicThreePort(1.0, 2.0, 3.0)
    m = s.dense()
    assert m[0, 0] == 1 and m[1, 0] == 2 and m[2, 0] == 3
    assert m[1, 1] == m[2, 2] == 1
    assert m[2, 1] == m[0, 2] == 2  # forward: 1->2, 2->3, 3->1
    assert m[0, 1] == m[1, 2] == 3


def test_from_dense_roundtrip_and_check():
    s = CyclicThreePort(np.array([0.1, 0.2j]), np.array([0.5, 0.3]), np.array([0.0, -0.1j]))
    back = CyclicThreePort.from_dense(s.dense(), tol=1e-15)
    assert np.array_equal(back.diag, s.diag)
    bad = s.dense()
    bad[0, 1, 2] += 0.1
    with pytest.raises(ValueError):
        CyclicThreePort.from_dense(bad, tol=1e-9)


def test_rejects_nonfinite():
    with pytest.raises(ValueError):
        CyclicThreePort(np.nan, 0, 0)


@settings(max_examples=60, deadline=None)
@given(cplx, cplx, cplx)
def test_eigenvalues_match_dense(d, f, b):
    s = CyclicThreePort(d, f, b)
    # characteristic polynomials avoid ordering ambiguity of near-degenerate eigenvalues
    assert np.allclose(np.poly(np.array(s.eigenvalues())), np.poly(s.dense()), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(cplx, cplx, cplx, st.floats(0.005, 0.1))
def test_s_to_y_matches_dense_formula(d, f, b, y0):
    s = CyclicThreePort(d, f, b, Kind.SCATTERING, y0)
    u = np.eye(3)
    try:
        y = s_to_y(s)
    except SingularConversion:
        return
    ref = y0 * np.linalg.solve(u + s.dense(), u - s.dense())
    assert np.allclose(y.dense(), ref, rtol=1e-9, atol=1e-12)
    back = y_to_s(y, y0)
    assert np.allclose(back.dense(), s.dense(), atol=1e-9)


def test_s_to_y_singular():
    # eigenvalue -1 makes U + S singular
    s = CyclicThreePort(-1 / 3, -1 / 3, -1 / 3, Kind.SCATTERING, 0.02)
    with pytest.raises(SingularConversion):
        s_to_y(s)


def test_kind_guard():
    with pytest.raises(TypeError):
        y_to_s(CyclicThreePort(0, 0, 0, Kind.SCATTERING), 0.02)
    with pytest.raises(ValueError):
        s_to_y(CyclicThreePort(0, 0, 0, Kind.SCATTERING))


def test_scalar_conversion_returns_complex():
    y = s_to_y(CyclicThreePort(0.1, 0.2, 0.05, Kind.SCATTERING, 0.02))
    assert isinstance(y.diag, complex)


def test_passivity_classes():
    lossless = CyclicThreePort(0.01j, 0.02j, 0.02j, Kind.ADMITTANCE)
    assert check_passivity(lossless).status is Passivity.LOSSLESS
    passive = CyclicThreePort(0.03, 0.0, 0.0, Kind.ADMITTANCE)
    assert check_passivity(passive).status is Passivity.PASSIVE
    active = CyclicThreePort(-0.01, 0.0, 0.0, Kind.ADMITTANCE)
    v = check_passivity(active)
    assert v.status is Passivity.ACTIVE and v.margin < 0


@settings(max_examples=40, deadline=None)
@given(cplx, cplx, cplx)
def test_hermitian_eigenvalues_match_dense(d, f, b):
    y = CyclicThreePort(d, f, b, Kind.ADMITTANCE)
    m = y.dense()
    ref = np.sort(np.linalg.eigvalsh(0.5 * (m + m.conj().T)))
    assert np.allclose(np.sort(hermitian_eigenvalues(y)), ref, atol=1e-12)


def test_twoport_dense_and_through():
    m = TwoPortS(0.1, 0.2, 0.9).dense()
    assert m[0, 1] == m[1, 0] == 0.9
    assert THROUGH.m == 1 and THROUGH.r == 0


def test_db():
    assert db(0.1) == pytest.approx(-20.0)
