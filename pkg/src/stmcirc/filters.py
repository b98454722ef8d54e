"""Second-order LC ladder matching filters: model, S-parameters and synthesis.

Branch 1 is the shunt parallel tank on the junction side, branch 2 the
series tank on the 50 ohm port side::

    port o---[L2 C2 series]---+---o junction
                              |
                        [L1 || C1]
                              |
                             gnd
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .bound import bound_report
from .compose import design_response, extract_metrics
from .errors import EmptyFeasibleSet, NoBand, NoConvergence, NonPhysical, NumericFailure, SingularNode
from .junction import center_frequency, characteristic_admittance_at
from .netcore import TwoPortS

log = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LadderFilter:
    l1: float
    c1: float
    l2: float
    c2: float
    q: float | None = None  # element quality factor; None is lossless

    def __post_init__(self):
        vals = (self.l1, self.c1, self.l2, self.c2)
        if not all(math.isfinite(v) and v > 0 for v in vals):
            raise NonPhysical(f"element values must be finite and positive: {vals}")

    @property
    def elements(self):
        return (self.l1, self.c1, self.l2, self.c2)

    def sparams(self, z0, freq):
        return filter_sparams(self, z0, freq)

    def lossless(self):
        return LadderFilter(self.l1, self.c1, self.l2, self.c2)


REFERENCE_FILTER = LadderFilter(l1=1.76e-9, c1=15.6e-12, l2=10.4e-9, c2=3.90e-12)


def filter_branch_immittances(filt, freq):
    """Shunt-tank admittance ``Y1`` and series-tank impedance ``Z2``."""
    w = 2.0 * np.pi * np.asarray(freq, dtype=float)
    if np.any(w <= 0):
        raise ValueError("frequency must be positive")
    if filt.q is None:
        y1 = 1j * (w * filt.c1 - 1.0 / (w * filt.l1))
        z2 = 1j * (w * filt.l2 - 1.0 / (w * filt.c2))
    else:
        # series resistance omega*X/q on every element
        zl1 = 1j * w * filt.l1 * (1.0 - 1j / filt.q)
        zc1 = (1.0 + 1j / filt.q) / (1j * w * filt.c1)
        y1 = 1.0 / zl1 + 1.0 / zc1
        z2 = 1j * w * filt.l2 * (1.0 - 1j / filt.q) + (1.0 + 1j / filt.q) / (1j * w * filt.c2)
    return y1, z2


def filter_input_impedance(filt, load, freq):
    """``Z2 + 1/(Y1 + load)`` seen from the port side."""
    y1, z2 = filter_branch_immittances(filt, freq)
    node = y1 + load
    if np.any(np.abs(node) < 1e-15):
        raise SingularNode("shunt node admittance vanishes")
    return z2 + 1.0 / node


def filter_sparams(filt, z0, freq):
    y1, z2 = filter_branch_immittances(filt, freq)
    y0 = 1.0 / z0
    z_in = z2 + 1.0 / (y1 + y0)  # port 1, port 2 terminated
    y_in = y1 + 1.0 / (z2 + z0)  # port 2, port 1 terminated
    r = (z_in - z0) / (z_in + z0)
    t = (y0 - y_in) / (y0 + y_in)
    m = 2.0 / (1.0 + (y0 + y1) * (z0 + z2))
    return TwoPortS(r, t, m)


def abcd_sparams(filt, z0, freq):
    """Same two-port from the ABCD cascade (series Z2, then shunt Y1)."""
    y1, z2 = filter_branch_immittances(filt, freq)
    a = 1.0 + z2 * y1
    b = z2
    c = y1
    d = 1.0 + 0.0 * y1
    den = a + b / z0 + c * z0 + d
    s11 = (a + b / z0 - c * z0 - d) / den
    s21 = 2.0 / den
    s12 = 2.0 * (a * d - b * c) / den
    s22 = (-a + b / z0 - c * z0 + d) / den
    return s11, s12, s21, s22


@dataclass(frozen=True)
class SynthesisSpec:
    """Two matching frequencies and the port impedance.

    The match is enforced at ``f_lo`` and ``f_hi``; ``fc`` and ``df`` are
    their midpoint and separation.
    """

    f_lo: float
    f_hi: float
    z0: float = 50.0

    def __post_init__(self):
        if not (0 < self.f_lo < self.f_hi):
            raise ValueError("matching frequencies must satisfy 0 < f_lo < f_hi")

    @classmethod
    def around(cls, fc, df, z0=50.0):
        if not df > 0:
            raise ValueError("df must be positive")
        return cls(fc - df / 2.0, fc + df / 2.0, z0)

    @property
    def fc(self):
        return 0.5 * (self.f_lo + self.f_hi)

    @property
    def df(self):
        return self.f_hi - self.f_lo


def chebyshev_g(ripple_db=0.1, order=2):
    """Lowpass Chebyshev prototype values ``g1..gN``."""
    beta = math.log(1.0 / math.tanh(ripple_db / 17.37))
    gam = math.sinh(beta / (2 * order))
    a = [math.sin((2 * k - 1) * math.pi / (2 * order)) for k in range(1, order + 1)]
    b = [gam ** 2 + math.sin(k * math.pi / order) ** 2 for k in range(1, order + 1)]
    g = [2.0 * a[0] / gam]
    for k in range(1, order):
        g.append(4.0 * a[k - 1] * a[k] / (b[k - 1] * g[k - 1]))
    return g


def prototype_guess(fc, df, rc, ripple_db=0.1):
    """Both tanks resonant at ``fc``, Chebyshev impedance levels at ``rc``."""
    g1, g2 = chebyshev_g(ripple_db, 2)
    wc = 2.0 * math.pi * fc
    frac = df / fc
    return LadderFilter(
        l1=rc * frac / (g1 * wc),
        c1=g1 / (rc * wc * frac),
        l2=g2 * rc / (wc * frac),
        c2=frac / (g2 * rc * wc),
    )


def damped_newton(fun, jac, x0, tol, max_iter=200, max_halvings=40):
    """Newton iteration with step halving on the max-norm of the residual."""
    x = np.asarray(x0, dtype=float)
    fx = fun(x)
    norm = np.abs(fx).max()
    for it in range(max_iter):
        if norm < tol:
            return x, norm, it
        try:
            step = np.linalg.solve(jac(x), -fx)
        except np.linalg.LinAlgError:
            raise NoConvergence(f"singular Jacobian at residual {norm:.3g}", norm) from None
        lam = 1.0
        for _ in range(max_halvings):
            trial = x + lam * step
            ft = fun(trial)
            nt = np.abs(ft).max()
            if np.isfinite(nt) and nt < norm:
                break
            lam *= 0.5
        else:
            raise NoConvergence(f"line search stalled at residual {norm:.3g}", norm)
        x, fx, norm = trial, ft, nt
    if norm < tol:
        return x, norm, max_iter
    raise NoConvergence(f"no convergence after {max_iter} iterations (residual {norm:.3g})", norm)


def synthesize_filter(yc, spec, initial=None, ripple_db=0.1, tol=1e-9, max_iter=200):
    """Element values with ``Z_m(f) = z0`` at both matching frequencies.

    ``yc`` maps frequency to the junction characteristic admittance; the
    filter is loaded with its conjugate. Newton runs on log element values.
    """
    freqs = np.array([spec.f_lo, spec.f_hi])
    w = 2.0 * np.pi * freqs
    load = np.conj(np.asarray(yc(freqs), dtype=complex))
    if initial is None:
        rc = 1.0 / np.conj(yc(spec.fc)).real
        initial = prototype_guess(spec.fc, spec.df, abs(rc), ripple_db)

    def parts(x):
        l1, c1, l2, c2 = np.exp(x)
        y1 = 1j * (w * c1 - 1.0 / (w * l1))
        z2 = 1j * (w * l2 - 1.0 / (w * c2))
        return (l1, c1, l2, c2), y1 + load, z2

    def fun(x):
        _, node, z2 = parts(x)
        zm = z2 + 1.0 / node - spec.z0
        return np.array([zm[0].real, zm[0].imag, zm[1].real, zm[1].imag])

    def jac(x):
        (l1, c1, l2, c2), node, _ = parts(x)
        inv2 = -1.0 / node ** 2
        cols = [inv2 * 1j / (w * l1), inv2 * 1j * w * c1, 1j * w * l2, 1j / (w * c2)]
        j = np.empty((4, 4))
        for k, col in enumerate(cols):
            j[:, k] = [col[0].real, col[0].imag, col[1].real, col[1].imag]
        return j

    x0 = np.log(initial.elements)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        x, residual, iters = damped_newton(fun, jac, x0, tol, max_iter)
        vals = np.exp(x)
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        raise NonPhysical(f"synthesis converged to non-physical elements {vals}")
    log.debug("synthesis converged in %d iterations, residual %.3g ohm", iters, residual)
    return LadderFilter(*map(float, vals))


def junction_yc(p):
    return lambda f: characteristic_admittance_at(p, f)


def golden_section_max(fun, a, b, iterations):
    """Fixed-schedule golden-section search for the maximum on ``[a, b]``.

    Ties move the bracket toward ``a``. Returns ``(x_best, f_best)`` over all
    evaluated points.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    best = max([(fc, -c), (fd, -d)])
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
            best = max(best, (fc, -c))
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
            best = max(best, (fd, -d))
    return -best[1], best[0]


@dataclass(frozen=True)
class DfOptimum:
    df: float
    bw: float
    filter: LadderFilter
    bound: float


def bandwidth_for_df(p, budget, df, fc=None, freqs=None):
    """Composed contiguous IX >= beta fractional BW for a symmetric match pair (0 when none)."""
    fc = center_frequency(p) if fc is None else fc
    try:
        filt = synthesize_filter(junction_yc(p), SynthesisSpec.around(fc, df, p.z0))
        resp = design_response(p, filt, freqs, fc)
        return extract_metrics(resp, budget.alpha_db, budget.beta_db).bw_frac, filt
    except (NoBand, NumericFailure) as exc:
        log.debug("df = %.6g Hz rejected: %s", df, exc)
        return 0.0, None


def optimize_df(p, budget, df_range=None, iterations=30, freqs=None):
    """Golden-section search for the matching offset maximizing composed BW."""
    fm = abs(p.fm)
    lo, hi = df_range if df_range is not None else (0.2 * fm, 1.8 * fm)
    if not (0 < lo < hi <= 2 * fm):
        raise ValueError("df_range must lie inside (0, 2 fm)")
    fc = center_frequency(p)
    if freqs is None:
        freqs = np.linspace(fc - 1.5 * fm, fc + 1.5 * fm, 2001)
    cache = {}

    def objective(df):
        if df not in cache:
            cache[df] = bandwidth_for_df(p, budget, df, fc, freqs)
        return cache[df][0]

    df, bw = golden_section_max(objective, lo, hi, iterations)
    if bw <= 0:
        raise EmptyFeasibleSet(
            f"no matching offset in [{lo / 1e6:.3f}, {hi / 1e6:.3f}] MHz reaches {budget.beta_db} dB isolation"
        )
    bound = bound_report(p, budget).bound
    return DfOptimum(df, bw, cache[df][1], bound)
