"""Junction plus three identical filters: closed-form and direct composition, metrics."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NoBand, SingularGraph, SingularSystem
from .junction import center_frequency, junction_s
from .netcore import CyclicThreePort, Kind, db

SINGULAR_DELTA = 1e-15


@dataclass(frozen=True)
class CirculatorResponse:
    freqs: np.ndarray
    s: CyclicThreePort
    center: float

    def __post_init__(self):
        if np.any(np.diff(self.freqs) <= 0):
            raise ValueError("frequency grid must be strictly increasing")

    @property
    def isolation_db(self):
        return -db(self.s.bwd)

    @property
    def insertion_loss_db(self):
        return -db(self.s.fwd)

    @property
    def return_loss_db(self):
        return -db(self.s.diag)


@dataclass(frozen=True)
class BandMetrics:
    bw_frac: float
    band: tuple
    il_range_db: tuple
    ix_min_db: float
    rl_min_db: float
    center: float
    il_center_db: float
    ix_center_db: float
    rl_center_db: float


def compose_mason(junction, filt):
    """Composed S-matrix from the signal-flow-graph closed form."""
    s11, s21, s31, delta = kernels.mason(junction.diag, junction.fwd, junction.bwd, filt.r, filt.t, filt.m)
    if delta < SINGULAR_DELTA:
        raise SingularGraph(f"graph determinant vanishes (|delta| = {delta:.3g})")
    if np.ndim(s11) == 0:
        s11, s21, s31 = complex(s11), complex(s21), complex(s31)
    return CyclicThreePort(s11, s21, s31, Kind.SCATTERING, junction.ref_admittance)


def compose_direct_dense(junction, filt):
    """Composed dense 3x3 S-matrix by solving the interface wave equations.

    Unknowns per frequency are the waves entering (``a``) and leaving
    (``b``) the junction at its three ports::

        b - S a = 0
        a - t b = m a_ext
        b_ext  = r a_ext + m b
    """
    sj = junction.dense().reshape(-1, 3, 3)
    n = sj.shape[0]
    r, t, m = (np.broadcast_to(np.asarray(v, dtype=np.complex128).ravel(), (n,)) for v in (filt.r, filt.t, filt.m))
    eye = np.eye(3)
    out = np.empty((n, 3, 3), dtype=np.complex128)
    for k in range(n):
        a_mat = np.zeros((6, 6), dtype=np.complex128)
        a_mat[:3, :3] = -sj[k]
        a_mat[:3, 3:] = eye
        a_mat[3:, :3] = eye
        a_mat[3:, 3:] = -t[k] * eye
        rhs = np.zeros((6, 3), dtype=np.complex128)
        rhs[3:, :] = m[k] * eye
        try:
            if np.linalg.cond(a_mat) > 1e15:
                raise np.linalg.LinAlgError
            x = np.linalg.solve(a_mat, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem("interface wave system is singular") from exc
        out[k] = r[k] * eye + m[k] * x[3:, :]
    return out.reshape(np.shape(junction.diag) + (3, 3))


def compose_direct(junction, filt):
    dense = compose_direct_dense(junction, filt)
    return CyclicThreePort.from_dense(dense, Kind.SCATTERING, junction.ref_admittance)


def default_grid(p, points=2001, span=1.5):
    fc = center_frequency(p)
    return np.linspace(fc - span * abs(p.fm), fc + span * abs(p.fm), points), fc


def junction_response(p, freqs=None, center=None):
    """Bare junction with ``p.z0`` terminations."""
    if freqs is None:
        freqs, center = default_grid(p)
    center = center_frequency(p) if center is None else center
    freqs = np.asarray(freqs, dtype=float)
    return CirculatorResponse(freqs, junction_s(p, freqs), center)


def design_response(p, filt, freqs=None, center=None):
    """Junction with ``filt`` (a ``LadderFilter``) at every port."""
    if freqs is None:
        freqs, center = default_grid(p)
    center = center_frequency(p) if center is None else center
    freqs = np.asarray(freqs, dtype=float)
    s = compose_mason(junction_s(p, freqs), filt.sparams(p.z0, freqs))
    return CirculatorResponse(freqs, s, center)


def _edge(f, v, i_out, i_in, level):
    # linear interpolation in dB between an outside and an inside grid point
    v0, v1 = v[i_out], v[i_in]
    if v1 == v0:
        return f[i_in]
    return f[i_out] + (level - v0) / (v1 - v0) * (f[i_in] - f[i_out])


def _contiguous(f, v, k, level, lo_idx=0, hi_idx=None):
    """Band around index ``k`` where ``v >= level``, clipped to [lo_idx, hi_idx]."""
    hi_idx = len(f) - 1 if hi_idx is None else hi_idx
    i = k
    while i > lo_idx and v[i - 1] >= level:
        i -= 1
    j = k
    while j < hi_idx and v[j + 1] >= level:
        j += 1
    lo = _edge(f, v, i - 1, i, level) if i > 0 and v[i - 1] < level else f[i]
    hi = _edge(f, v, j + 1, j, level) if j < len(f) - 1 and v[j + 1] < level else f[j]
    return i, j, lo, hi


def extract_metrics(resp, alpha_db, beta_db, il_limited=False):
    """BW and in-band IL/IX/RL of the isolation band containing the center."""
    f = resp.freqs
    ix = resp.isolation_db
    il = resp.insertion_loss_db
    rl = resp.return_loss_db
    k = int(np.argmin(np.abs(f - resp.center)))
    if ix[k] < beta_db:
        raise NoBand(f"isolation at the center is {ix[k]:.2f} dB < {beta_db} dB")
    i, j, lo, hi = _contiguous(f, ix, k, beta_db)
    if il_limited:
        if il[k] > alpha_db:
            raise NoBand(f"insertion loss at the center is {il[k]:.2f} dB > {alpha_db} dB")
        i2, j2, lo2, hi2 = _contiguous(f, -il, k, -alpha_db, i, j)
        lo, hi = max(lo, lo2), min(hi, hi2)
        i, j = i2, j2
    sel = slice(i, j + 1)

    def at_center(v):
        return float(np.interp(resp.center, f, v))

    return BandMetrics(
        bw_frac=float((hi - lo) / resp.center),
        band=(float(lo), float(hi)),
        il_range_db=(float(il[sel].min()), float(il[sel].max())),
        ix_min_db=float(ix[sel].min()),
        rl_min_db=float(rl[sel].min()),
        center=float(resp.center),
        il_center_db=at_center(il),
        ix_center_db=at_center(ix),
        rl_center_db=at_center(rl),
    )


def isolation_notches(resp, min_db=40.0):
    """Frequencies of local isolation maxima above ``min_db``."""
    ix = resp.isolation_db
    idx = [i for i in range(1, len(ix) - 1) if ix[i] >= min_db and ix[i] >= ix[i - 1] and ix[i] > ix[i + 1]]
    return [float(resp.freqs[i]) for i in idx]
