"""Harmonic-balance reference for a single modulated series tank.

The branch is ``L0`` in series with ``R0`` and a capacitor whose elastance is
``(1/C0) / (1 + d cos(wm t))``. Expanding the elastance in a cosine series
couples the charge at ``w`` to every sideband ``w + k wm``; truncating that
system gives a banded linear solve whose depth-1, one-sided version is the
closed-form sideband admittance used by :mod:`stmcirc.junction`.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import InvalidModulationDepth, SingularTruncation

log = logging.getLogger(__name__)

CAUCHY_TOL = 1e-6


class Sidebands(Enum):
    PLUS_ONLY = "plus"
    MINUS_ONLY = "minus"
    BOTH = "both"


@dataclass(frozen=True)
class TruncationSpec:
    sidebands: Sidebands = Sidebands.BOTH
    depth: int = 1

    def __post_init__(self):
        if int(self.depth) != self.depth or self.depth < 1:
            raise ValueError("depth must be a positive integer")

    def orders(self):
        if self.sidebands is Sidebands.PLUS_ONLY:
            return list(range(0, self.depth + 1))
        if self.sidebands is Sidebands.MINUS_ONLY:
            return list(range(-self.depth, 1))
        return list(range(-self.depth, self.depth + 1))


@lru_cache(maxsize=1024)
def elastance_fourier(dc_ratio, n):
    """``n``-th cosine coefficient of ``C0 / C(t)`` by adaptive quadrature.

    ``C0/C(t) = a0 + sum_n a_n cos(n theta)``, so ``a0`` is the mean and
    ``a_n = (2/pi) int_0^pi cos(n t) / (1 + d cos t) dt`` for ``n >= 1``.
    """
    if not 0.0 <= dc_ratio < 1.0:
        raise InvalidModulationDepth(f"dc_ratio must lie in [0, 1), got {dc_ratio}")
    if n < 0 or int(n) != n:
        raise ValueError("order must be a non-negative integer")
    if dc_ratio == 0.0:
        return 1.0 if n == 0 else 0.0
    with warnings.catch_warnings():
        # high orders are tiny; relative roundoff there is below the 1e-12 absolute target
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(
            lambda t: math.cos(n * t) / (1.0 + dc_ratio * math.cos(t)),
            0.0, math.pi, epsabs=1e-14, epsrel=1e-13, limit=400,
        )
    return val / math.pi if n == 0 else 2.0 * val / math.pi


def sideband_system(p, f, trunc):
    """Matrix, right-hand side and retained orders of the truncated system.

    Unknowns are the charge phasors ``q_k`` at ``w + k wm``.
    """
    w = 2.0 * math.pi * f
    wm = 2.0 * math.pi * p.fm
    w0sq = p.w0 ** 2
    orders = trunc.orders()
    n = len(orders)
    wk = np.array([w + k * wm for k in orders])
    coef = [elastance_fourier(p.dc_ratio, j) for j in range(2 * trunc.depth + 1)]
    m = np.empty((n, n), dtype=np.complex128)
    for i, ki in enumerate(orders):
        for j, kj in enumerate(orders):
            lag = abs(ki - kj)
            c = coef[0] if lag == 0 else 0.5 * coef[lag]
            m[i, j] = -c * w0sq
        m[i, i] += wk[i] ** 2 - 1j * p.loss_rate * wk[i]
    rhs = np.zeros(n, dtype=np.complex128)
    rhs[orders.index(0)] = -1.0 / p.l0
    return m, rhs, orders


def tank_admittance(p, f, trunc=TruncationSpec()):
    """Fundamental-frequency input admittance of one modulated series tank."""
    if not f > 0:
        raise ValueError("frequency must be positive")
    m, rhs, orders = sideband_system(p, f, trunc)
    try:
        if np.linalg.cond(m) > 1e14:
            raise np.linalg.LinAlgError("ill-conditioned")
        q = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularTruncation(f"truncated sideband system singular at {f:.6g} Hz") from exc
    return complex(2j * math.pi * f * q[orders.index(0)])


@dataclass(frozen=True)
class DepthStudy:
    depths: tuple
    values: tuple  # admittance per depth
    steps: tuple  # |Y(d) - Y(d-1)| / |Y(d)|
    converged: bool


def depth_study(p, f, sidebands=Sidebands.BOTH, max_depth=16, tol=CAUCHY_TOL):
    """Cauchy convergence of ``tank_admittance`` with increasing depth.

    Emits a ``RuntimeWarning`` when the last step exceeds ``tol``.
    """
    depths = tuple(range(1, max_depth + 1))
    vals = tuple(tank_admittance(p, f, TruncationSpec(sidebands, d)) for d in depths)
    steps = tuple(abs(vals[i] - vals[i - 1]) / abs(vals[i]) for i in range(1, len(vals)))
    converged = bool(steps and steps[-1] < tol)
    nonmono = [i + 2 for i in range(1, len(steps)) if steps[i] > steps[i - 1]]
    if nonmono:
        log.info("non-monotone truncation error at depths %s (dc_ratio %.3g)", nonmono, p.dc_ratio)
    if not converged:
        warnings.warn(
            f"sideband truncation not converged at depth {max_depth}: "
            f"relative step {steps[-1] if steps else float('nan'):.3g} >= {tol:g} (dc_ratio {p.dc_ratio})",
            RuntimeWarning,
            stacklevel=2,
        )
    return DepthStudy(depths, vals, steps, converged)
