"""Cross-checks between the closed forms and their independent references.

Each check returns a :class:`CheckResult`; the ``verify`` command prints
them and fails when any does not pass.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import hboracle
from .bound import junction_rlc, verify_bode_fano_integral
from .compose import compose_direct_dense, compose_mason
from .filters import abcd_sparams, filter_input_impedance, filter_sparams
from .junction import (
    characteristic_admittance,
    input_admittance,
    junction_y,
    sideband_admittances,
    sideband_coefficients,
)
from .netcore import CyclicThreePort, Kind, TwoPortS, check_passivity, hermitian_eigenvalues


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str = ""
    skipped: bool = False

    def line(self):
        tag = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{tag}] {self.name}: worst {self.worst:.3e} (tol {self.tol:.1e}){extra}"


def _result(name, worst, tol, detail=""):
    return CheckResult(name, bool(worst <= tol), float(worst), tol, detail)


def sideband_truncation(p, freqs, tol=1e-12):
    """Closed-form ``3 I+`` / ``3 I-`` against the depth-1 one-sided harmonic-balance solve."""
    worst = 0.0
    for f in freqs:
        ip, im = sideband_admittances(p, f)
        for side, ref in ((hboracle.Sidebands.PLUS_ONLY, ip), (hboracle.Sidebands.MINUS_ONLY, im)):
            hb = hboracle.tank_admittance(p, f, hboracle.TruncationSpec(side, 1))
            worst = max(worst, abs(hb - 3.0 * ref) / abs(3.0 * ref))
    return _result("sideband admittance vs depth-1 harmonic balance", worst, tol, f"{len(freqs)} frequencies")


def elastance_coefficients(dc_ratios=(0.1, 0.3, 0.544, 0.7, 0.9), tol=1e-9):
    worst = 0.0
    for dc in dc_ratios:
        k = sideband_coefficients(dc)
        worst = max(worst, abs(hboracle.elastance_fourier(dc, 0) - k.sigma), abs(hboracle.elastance_fourier(dc, 1) - k.gamma))
    return _result("sigma/gamma closed form vs quadrature", worst, tol, f"dc in {list(dc_ratios)}")


def truncation_convergence(p, f, max_depth=16):
    """Depth study; reported, never failing. Non-convergence also warns."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        study = hboracle.depth_study(p, f, max_depth=max_depth)
    for w in caught:
        warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    detail = "converged" if study.converged else "NOT converged, truncation error warning"
    return CheckResult(
        f"sideband truncation depth study (1..{max_depth})", True, study.steps[-1], hboracle.CAUCHY_TOL, detail
    )


def random_passive_inputs(rng, n):
    """Cyclic junction S and reciprocal filter S with singular values <= 1."""
    lam = rng.uniform(0, 1, (3, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, (3, n)))
    w = np.exp(2j * np.pi / 3)
    d = (lam[0] + lam[1] + lam[2]) / 3
    f = (lam[0] + lam[1] * w + lam[2] * np.conj(w)) / 3
    b = (lam[0] + lam[1] * np.conj(w) + lam[2] * w) / 3
    junction = CyclicThreePort(d, f, b, Kind.SCATTERING, 0.02)
    m = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    m = m + np.swapaxes(m, -1, -2)
    m /= np.linalg.norm(m, 2, axis=(-2, -1))[:, None, None] / rng.uniform(0.05, 0.999, n)[:, None, None]
    return junction, TwoPortS(m[:, 0, 0], m[:, 1, 1], m[:, 0, 1])


def mason_vs_direct(junction=None, filt=None, n=1000, seed=12345, tol=1e-10):
    """Relative deviation between the closed-form composition and the dense solve."""
    if junction is None:
        junction, filt = random_passive_inputs(np.random.default_rng(seed), n)
        label = f"{n} random passive inputs"
    else:
        label = f"{np.size(junction.diag)} design points"
    closed = compose_mason(junction, filt).dense()
    direct = compose_direct_dense(junction, filt)
    scale = np.maximum(np.abs(direct).reshape(-1, 9).max(axis=1), 1e-300)
    worst = float((np.abs(closed - direct).reshape(-1, 9).max(axis=1) / scale).max())
    return _result("closed-form composition vs direct solve", worst, tol, label)


def lossless_passivity(p, freqs, tol=1e-10):
    """Hermitian part of the lossless junction Y vanishes."""
    y = junction_y(p.with_(q0=math.inf), freqs)
    eig = hermitian_eigenvalues(y)
    scale = np.abs(np.stack(y.eigenvalues(), -1)).max(axis=-1)
    worst = float((np.abs(eig).max(axis=-1) / scale).max())
    verdict = check_passivity(y, tol=tol * float(scale.max()))
    return _result("lossless junction: Y + Y^H = 0", worst, tol, verdict.status.value)


def lossy_passivity(p, freqs, tol=1e-12):
    """Lossy junction has a positive semidefinite Hermitian part."""
    y = junction_y(p, freqs)
    eig = hermitian_eigenvalues(y)
    worst = float(max(0.0, -eig.min()))
    return _result("junction passivity: eig(Y + Y^H) >= 0", worst, tol, f"min eigenvalue {eig.min():.3e} S")


def conjugate_match(p, freqs, tol=1e-10):
    """Lossless junction: port input admittance equals ``conj(Y_c)``."""
    if not p.lossless:
        p = p.with_(q0=math.inf)
    y = junction_y(p, freqs)
    yc = characteristic_admittance(y)
    yin = input_admittance(y)
    worst = float((np.abs(yin - np.conj(yc)) / np.abs(yc)).max())
    return _result("lossless conjugate match Y_in = conj(Y_c)", worst, tol)


def filter_vs_abcd(filt, z0, freqs, tol=1e-12):
    s = filter_sparams(filt, z0, freqs)
    s11, s12, s21, s22 = abcd_sparams(filt, z0, freqs)
    worst = float(max(np.abs(s.r - s11).max(), np.abs(s.m - s21).max(), np.abs(s.m - s12).max(), np.abs(s.t - s22).max()))
    return _result("filter S-parameters vs ABCD cascade", worst, tol)


def bode_fano_integral(p, filt, z0, tol=0.01):
    """Integral of ``ln 1/|G|`` for ``filt`` terminated in the extracted RLC model."""
    model = junction_rlc(p)
    f = np.geomspace(0.01 * model.fc, 100.0 * model.fc, 400001)
    zm = filter_input_impedance(filt.lossless(), 1.0 / model.impedance(f), f)
    gamma = np.abs((zm - z0) / (zm + z0))
    rep = verify_bode_fano_integral(f, gamma, model, tol=tol)
    worst = rep.ratio - 1.0
    return CheckResult(
        "Bode-Fano integral <= pi Rc / Lc", not rep.violated, worst, tol, f"integral/limit = {rep.ratio:.4f}"
    )


def run_all(p, filt, freqs):
    freqs = np.asarray(freqs, dtype=float)
    sample = freqs[:: max(1, len(freqs) // 25)]
    out = [
        sideband_truncation(p, sample),
        elastance_coefficients(),
        truncation_convergence(p, float(np.median(freqs))),
        mason_vs_direct(),
        lossless_passivity(p, freqs),
        lossy_passivity(p, freqs) if not p.lossless else None,
        conjugate_match(p, freqs),
    ]
    if filt is not None:
        from .junction import junction_s

        out.append(mason_vs_direct(junction_s(p, sample), filter_sparams(filt, p.z0, sample)))
        out.append(filter_vs_abcd(filt, p.z0, freqs))
        out.append(bode_fano_integral(p, filt, p.z0))
    return [r for r in out if r is not None]
