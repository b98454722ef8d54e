"""Pure-Python (numpy) implementations of the per-frequency kernels.

Same signatures and return conventions as the compiled ``_ckernels``
module; ``stmcirc.kernels`` picks one at import time.
"""

import numpy as np

_W = np.exp(2j * np.pi / 3)
_WC = np.conj(_W)


def junction_y(freqs, l0, w0, sigma, gamma, loss_rate, wm):
    """Closed-form junction Y-parameters on a frequency array.

    Returns ``(y11, y21, y31, pole_ratio)`` where ``pole_ratio`` is the
    smallest denominator magnitude seen, relative to ``sigma * w0**2``.
    """
    w = 2.0 * np.pi * np.asarray(freqs, dtype=np.float64)
    res = sigma * w0 * w0
    coupling = (w0 * w0 * gamma) ** 2 / 4.0
    d0 = w * w - 1j * loss_rate * w - res
    if coupling == 0.0:
        bp = bm = d0
        ratio = np.abs(d0).min() / res if w.size else np.inf
    else:
        wp = w + wm
        wn = w - wm
        dp = wp * wp - res - 1j * loss_rate * wp
        dn = wn * wn - res - 1j * loss_rate * wn
        bp = d0 - coupling / dp
        bm = d0 - coupling / dn
        ratio = min(np.abs(dp).min(), np.abs(dn).min(), np.abs(bp).min(), np.abs(bm).min()) / res
    lead = -1j * w / (3.0 * l0)
    ip = lead / bp
    im = lead / bm
    return 2.0 * (ip + im), 2.0 * (_W * ip + _WC * im), 2.0 * (_WC * ip + _W * im), float(ratio)


def cyclic_convert(d, f, b, y0, to_admittance):
    """Map a circulant 3x3 through its eigenvalues.

    ``to_admittance`` selects S -> Y (``y0 (1 - s)/(1 + s)``) or
    Y -> S (``(y0 - y)/(y0 + y)``). Returns ``(d, f, b, cond)`` with the
    worst condition number of the matrix that had to be inverted.
    """
    d = np.asarray(d, dtype=np.complex128)
    f = np.asarray(f, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    lam0 = d + f + b
    lam1 = d + f * _WC + b * _W
    lam2 = d + f * _W + b * _WC
    out = []
    dens = []
    for lam in (lam0, lam1, lam2):
        if to_admittance:
            den = 1.0 + lam
            out.append(y0 * (1.0 - lam) / den)
        else:
            den = y0 + lam
            out.append((y0 - lam) / den)
        dens.append(np.abs(den))
    dens = np.stack(dens)
    lo = dens.min(axis=0)
    with np.errstate(divide="ignore"):
        cond = np.where(lo > 0, dens.max(axis=0) / np.where(lo > 0, lo, 1.0), np.inf)
    l0_, l1_, l2_ = out
    nd = (l0_ + l1_ + l2_) / 3.0
    nf = (l0_ + l1_ * _W + l2_ * _WC) / 3.0
    nb = (l0_ + l1_ * _WC + l2_ * _W) / 3.0
    return nd, nf, nb, float(np.max(cond)) if cond.size else 1.0


def mason(s11, s21, s31, r, t, m):
    """Closed-form composition of the junction with three identical filters.

    Returns ``(S11, S21, S31, min_abs_delta)``.
    """
    s11, s21, s31, r, t, m = np.broadcast_arrays(
        *(np.asarray(v, dtype=np.complex128) for v in (s11, s21, s31, r, t, m))
    )
    st = s11 * t
    x = s21 * s31 * t * t
    # forward and backward three-port loops
    c = (s21 ** 3 + s31 ** 3) * t ** 3
    d1 = 1.0 + st * st - (2.0 * st + x)
    delta = 1.0 - st ** 3 + (3.0 * st * st + 3.0 * st * x) - (3.0 * st + 3.0 * x + c)
    m2 = m * m
    one = 1.0 - st
    big11 = r + (d1 * m2 * s11 + 2.0 * m2 * s21 * s31 * t * one + m2 * (s21 ** 3 + s31 ** 3) * t * t) / delta
    big21 = m2 * (s21 * one + s31 * s31 * t) / delta
    big31 = m2 * (s31 * one + s21 * s21 * t) / delta
    return big11, big21, big31, float(np.abs(delta).min()) if delta.size else np.inf
