"""Bandwidth bounds: RLC extraction, Bode-Fano limit and the modulation limit."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import brentq

from .errors import (
    GridTooNarrow,
    InfeasibleSpecs,
    MultipleResonances,
    NoResonance,
)
from .junction import center_frequency, characteristic_admittance_at, sign_change_brackets

FD_STEP = 1e-5


@dataclass(frozen=True)
class RlcModel:
    rc: float
    lc: float
    cc: float
    fc: float
    qc: float

    @classmethod
    def from_rlf(cls, rc, lc, fc):
        rc, lc, fc = float(rc), float(lc), float(fc)
        wc = 2.0 * math.pi * fc
        return cls(rc, lc, 1.0 / (wc * wc * lc), fc, wc * lc / rc)

    def impedance(self, f):
        w = 2.0 * np.pi * np.asarray(f, dtype=float)
        return self.rc + 1j * (w * self.lc - 1.0 / (w * self.cc))


@dataclass(frozen=True)
class SpecBudget:
    alpha_db: float  # max insertion loss
    beta_db: float  # min isolation
    rho_db: float  # min return loss
    gamma_lin: float  # max in-band |reflection|


def reflection_budget(alpha_db, beta_db):
    """Return-loss floor implied by IL <= alpha and IX >= beta (dissipation ignored)."""
    if not (alpha_db > 0 and beta_db > 0):
        raise InfeasibleSpecs("alpha and beta must be positive dB values")
    arg = 1.0 - 10.0 ** (-beta_db / 20.0) - 10.0 ** (-alpha_db / 20.0)
    if arg <= 0:
        raise InfeasibleSpecs(
            f"IL <= {alpha_db} dB and IX >= {beta_db} dB violate power conservation"
        )
    rho_db = -20.0 * math.log10(arg)
    return SpecBudget(alpha_db, beta_db, rho_db, 10.0 ** (-rho_db / 20.0))


def extract_rlc(impedance, search_band, points=401, step=FD_STEP):
    """First-order series-RLC model of a resonant impedance.

    ``impedance`` maps frequency (Hz, scalar or array) to complex ohms; its
    reactance must cross zero exactly once inside ``search_band``.
    """
    lo, hi = search_band
    grid = np.linspace(lo, hi, points)
    x = np.imag(impedance(grid))
    crossings = sign_change_brackets(x)
    if crossings.size == 0:
        raise NoResonance(f"reactance does not change sign in [{lo:.6g}, {hi:.6g}] Hz")
    if crossings.size > 1:
        raise MultipleResonances(f"{crossings.size} reactance zero crossings in search band")
    i = crossings[0]
    fc = brentq(lambda f: np.imag(impedance(f)), grid[i], grid[i + 1], xtol=1e-3, rtol=4 * np.finfo(float).eps)
    rc = abs(impedance(fc))

    def central(h):
        return (impedance(fc + h) - impedance(fc - h)) / (2.0 * 2.0 * math.pi * h)

    h = fc * step
    dz = (4.0 * central(h / 2.0) - central(h)) / 3.0
    return RlcModel.from_rlf(rc, 0.5 * abs(dz), fc)


def junction_rlc(p, band=None):
    """RLC model of ``1 / conj(Y_c)`` around the junction's center frequency."""
    fc = center_frequency(p)
    if band is None:
        half = 0.5 * abs(p.fm)
        band = (fc - half, fc + half)
    return extract_rlc(lambda f: 1.0 / np.conj(characteristic_admittance_at(p, f)), band)


def bode_fano_bw(model, budget):
    """Brickwall Bode-Fano fractional bandwidth ``pi / ln(1/|G|) / Qc``."""
    log_term = math.log(1.0 / budget.gamma_lin)
    if log_term <= 0:
        return math.inf
    return math.pi / log_term / model.qc


@dataclass(frozen=True)
class BoundReport:
    fc: float
    model: RlcModel
    bode_fano: float
    modulation_limit: float

    @property
    def bound(self):
        return min(self.bode_fano, self.modulation_limit)


def bound_report(p, budget, band=None):
    """Both branches of the global bound for junction ``p``."""
    try:
        model = junction_rlc(p, band)
    except NoResonance as exc:
        raise InfeasibleSpecs(f"junction does not circulate: {exc}") from exc
    return BoundReport(model.fc, model, float(bode_fano_bw(model, budget)), 2.0 * abs(p.fm) / model.fc)


def global_bound(p, budget, band=None):
    return bound_report(p, budget, band).bound


@dataclass(frozen=True)
class IntegralReport:
    integral: float  # rad/s
    bound: float  # rad/s
    violated: bool

    @property
    def ratio(self):
        return self.integral / self.bound


def verify_bode_fano_integral(freqs, gamma_mag, model, tol=0.01, edge=0.99):
    """Check the Bode-Fano integral of ``ln(1/|G|)`` over ``freqs`` against ``pi Rc / Lc``."""
    freqs = np.asarray(freqs, dtype=float)
    g = np.abs(np.asarray(gamma_mag))
    if g[0] <= edge or g[-1] <= edge:
        raise GridTooNarrow(
            f"|Gamma| at the grid edges ({g[0]:.4f}, {g[-1]:.4f}) must exceed {edge}"
        )
    integral = float(trapezoid(np.log(1.0 / g), 2.0 * np.pi * freqs))
    limit = math.pi * model.rc / model.lc
    return IntegralReport(integral, limit, bool(integral > limit * (1.0 + tol)))
