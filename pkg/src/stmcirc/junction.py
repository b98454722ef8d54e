"""Closed-form model of the spatiotemporally modulated current-mode junction.

Three identical tanks (L0, loss R0, capacitance modulated as
``C0 + dC cos(wm t + phase)`` with phases 0, 120, 240 degrees) form a
cyclic three-port. Each port current couples to the ``w + wm`` and
``w - wm`` sidebands; the one-sideband continued fraction gives the
sideband admittances ``I+`` and ``I-``, which combine with the three-phase
pattern into ``Y11``, ``Y21`` and ``Y31``.

Loss is applied as ``R0 / L0 = w_r / Q0`` where ``w_r = sqrt(sigma) w0`` is
the resonance of the tank with its time-averaged elastance; ``Q0`` is the
unloaded quality factor at that frequency.
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .errors import (
    DegenerateJunction,
    InvalidModulationDepth,
    NoResonance,
    PoleProximity,
    SingularNetwork,
)
from .netcore import CyclicThreePort, Kind, y_to_s

POLE_TOL = 1e-9
DEGENERATE_TOL = 1e-15


@dataclass(frozen=True)
class SidebandCoefficients:
    sigma: float
    gamma: float


def _coefficients(dc_ratio):
    if not 0.0 <= dc_ratio < 1.0:
        raise InvalidModulationDepth(f"dc_ratio must lie in [0, 1), got {dc_ratio}")
    s = math.sqrt(1.0 - dc_ratio * dc_ratio)
    # (2/d)(1 - 1/s) rewritten without cancellation for small d
    return SidebandCoefficients(1.0 / s, -2.0 * dc_ratio / ((1.0 + s) * s))


@dataclass(frozen=True)
class JunctionParams:
    """Static circuit and modulation parameters (SI units).

    ``fm`` may be negative, which reverses the modulation sequence and the
    direction of circulation. ``q0 = math.inf`` selects the lossless model.
    """

    l0: float
    c0: float
    dc_ratio: float
    fm: float
    q0: float = 50.0
    z0: float = 50.0

    def __post_init__(self):
        if not (self.l0 > 0 and self.c0 > 0):
            raise ValueError("l0 and c0 must be positive")
        if not (self.q0 > 0):
            raise ValueError("q0 must be positive or infinite")
        if not (self.z0 > 0):
            raise ValueError("z0 must be positive")
        _coefficients(self.dc_ratio)
        if not abs(self.fm) < self.f0:
            raise ValueError(
                f"|fm| = {abs(self.fm):.4g} Hz must stay below f0 = {self.f0:.4g} Hz "
                "(parametric regime, closed form invalid)"
            )
        if abs(self.fm) > 0.5 * self.f0:
            warnings.warn(
                "fm exceeds half of f0; the closed-form junction model loses accuracy "
                "as parametric oscillation is approached",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def w0(self):
        return 1.0 / math.sqrt(self.l0 * self.c0)

    @property
    def f0(self):
        return self.w0 / (2.0 * math.pi)

    @property
    def coefficients(self):
        return _coefficients(self.dc_ratio)

    @property
    def f_res(self):
        """Resonance of a tank with the time-averaged elastance."""
        return math.sqrt(self.coefficients.sigma) * self.f0

    @property
    def loss_rate(self):
        """``R0 / L0`` in rad/s."""
        if math.isinf(self.q0):
            return 0.0
        return 2.0 * math.pi * self.f_res / self.q0

    @property
    def r0(self):
        return self.loss_rate * self.l0

    @property
    def y0(self):
        return 1.0 / self.z0

    @property
    def lossless(self):
        return math.isinf(self.q0)

    def with_(self, **changes):
        return replace(self, **changes)


REFERENCE_JUNCTION = JunctionParams(l0=25e-9, c0=1.2e-12, dc_ratio=0.544, fm=110e6, q0=50.0, z0=50.0)


def sideband_coefficients(p):
    """``sigma`` (mean of C0/C(t)) and ``gamma`` (its first cosine coefficient)."""
    dc = p.dc_ratio if isinstance(p, JunctionParams) else float(p)
    return _coefficients(dc)


def sideband_admittances(p, f):
    """``(I+, I-)`` on ``f``; the junction entries are built from these."""
    y11, y21, y31 = _raw_y(p, f)
    w = np.exp(2j * np.pi / 3)
    # invert Y11 = 2(I+ + I-), Y21 = 2(w I+ + w* I-)
    ip = (y21 / 2.0 - np.conj(w) * y11 / 2.0) / (w - np.conj(w))
    im = y11 / 2.0 - ip
    return ip, im


def _raw_y(p, f):
    k = p.coefficients
    y11, y21, y31, ratio = kernels.junction_y(
        np.asarray(f, dtype=np.float64), p.l0, p.w0, k.sigma, k.gamma, p.loss_rate, 2.0 * math.pi * p.fm
    )
    if ratio < POLE_TOL:
        raise PoleProximity(f"frequency grid hits a pole of the sideband admittance (ratio {ratio:.3g})")
    return y11, y21, y31


def junction_y(p, f):
    """Junction admittance matrix at ``f`` (scalar or array, Hz)."""
    if np.any(np.asarray(f) <= 0):
        raise ValueError("frequencies must be positive")
    y11, y21, y31 = _raw_y(p, f)
    if np.ndim(f) == 0:
        y11, y21, y31 = complex(y11), complex(y21), complex(y31)
    return CyclicThreePort(y11, y21, y31, Kind.ADMITTANCE)


def junction_s(p, f):
    """Junction S-matrix referenced to ``p.z0`` at every port."""
    return y_to_s(junction_y(p, f), p.y0)


def characteristic_admittance(y):
    """Termination that nulls the isolated-port voltage: ``Y21^2/Y31 - Y11``."""
    y31 = np.asarray(y.bwd)
    if np.any(np.abs(y31) < DEGENERATE_TOL):
        raise DegenerateJunction("Y31 vanishes; characteristic admittance undefined")
    return y.fwd ** 2 / y.bwd - y.diag


def input_admittance(y):
    """Port-1 input admittance with ports 2 and 3 terminated in ``Y_c``."""
    if np.any(np.abs(np.asarray(y.fwd)) < DEGENERATE_TOL):
        raise DegenerateJunction("Y21 vanishes; input admittance undefined")
    return y.diag - y.bwd ** 2 / y.fwd


def driven_transmission(y, yc):
    """``V3 / Vs`` with port 1 driven and every port terminated in ``yc``."""
    y11, y21, y31 = y.diag, y.fwd, y.bwd
    det_y = y11 ** 3 + y21 ** 3 + y31 ** 3 - 3.0 * y11 * y21 * y31
    den = det_y + yc ** 3 + 3.0 * y11 * yc ** 2 + 3.0 * (y11 ** 2 - y21 * y31) * yc
    if np.any(np.abs(den) < 1e-18):
        raise SingularNetwork("terminated junction is singular")
    return yc * (y21 ** 2 - (yc + y11) * y31) / den


def terminated_voltages(y, yc):
    """Port voltages for ``Vs = (1, 0, 0)`` through termination ``yc`` (dense solve)."""
    m = np.eye(3) + y.dense() / yc
    return np.linalg.solve(m, np.array([1.0, 0.0, 0.0]))


def characteristic_admittance_at(p, f):
    return characteristic_admittance(junction_y(p, f))


def sign_change_brackets(x):
    """Indices ``i`` with a root of the sampled function in ``[i, i + 1]``.

    A sample that is exactly zero counts once, as the bracket starting there.
    """
    x = np.asarray(x)
    s = np.sign(x)
    idx = np.flatnonzero((s[:-1] * s[1:] < 0) | (s[:-1] == 0))
    if s.size and s[-1] == 0:
        idx = np.append(idx, s.size - 2)
    return idx


def center_frequency(p, band=None, points=201):
    """Zero crossing of ``Im(Y_c)`` with ``Re(Y_c) > 0``.

    The default search band is ``f_res +/- |fm|/2``. When several crossings
    qualify, the one nearest ``f_res`` is returned.
    """
    if band is None:
        half = 0.5 * abs(p.fm) if p.fm else 0.05 * p.f_res
        band = (p.f_res - half, p.f_res + half)
    lo, hi = band
    grid = np.linspace(lo, hi, points)
    yc = characteristic_admittance_at(p, grid)
    b = yc.imag
    roots = []
    for i in sign_change_brackets(b):

        def im_yc(f):
            return characteristic_admittance_at(p, f).imag

        fc = brentq(im_yc, grid[i], grid[i + 1], xtol=1e-3, rtol=4 * np.finfo(float).eps)
        if characteristic_admittance_at(p, fc).real > 0:
            roots.append(fc)
    if not roots:
        raise NoResonance(
            f"Y_c has no B = 0 crossing with G > 0 in [{lo / 1e6:.3f}, {hi / 1e6:.3f}] MHz"
        )
    return min(roots, key=lambda r: abs(r - p.f_res))


def matched_insertion_loss(p, f=None):
    """Transducer IL (dB) from port 1 to port 2 with all ports terminated in ``Y_c``.

    Evaluated at the center frequency unless ``f`` is given.
    """
    f = center_frequency(p) if f is None else f
    y = junction_y(p, f)
    yc = characteristic_admittance(y)
    v = terminated_voltages(y, yc)
    gain = 4.0 * yc.real * (1.0 / yc).real * abs(v[1]) ** 2
    return -10.0 * math.log10(gain)
