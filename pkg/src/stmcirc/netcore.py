"""Cyclic-symmetric three-port algebra and small two-port helpers.

A cyclic three-port is stored as its three distinct entries. The dense
layout is::

    [[d, b, f],
     [f, d, b],
     [b, f, d]]

with ``d`` the diagonal, ``f`` the (2,1) entry and ``b`` the (3,1) entry.
Entries may be scalars or equally shaped arrays (one value per frequency).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import SingularConversion

COND_LIMIT = 1e12
PASSIVITY_TOL = 1e-9

_W = np.exp(2j * np.pi / 3)


class Kind(Enum):
    SCATTERING = "S"
    ADMITTANCE = "Y"


@dataclass(frozen=True)
class CyclicThreePort:
    diag: complex
    fwd: complex
    bwd: complex
    kind: Kind = Kind.SCATTERING
    ref_admittance: float | None = None

    def __post_init__(self):
        for name in ("diag", "fwd", "bwd"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ValueError(f"non-finite {name} entry in {self.kind.name} matrix")

    @property
    def shape(self):
        return np.shape(self.diag)

    def dense(self):
        """Expand to ``(..., 3, 3)``."""
        d, f, b = np.broadcast_arrays(*(np.asarray(v, dtype=np.complex128) for v in (self.diag, self.fwd, self.bwd)))
        rows = [[d, b, f], [f, d, b], [b, f, d]]
        return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)

    @classmethod
    def from_dense(cls, m, kind=Kind.SCATTERING, ref_admittance=None, tol=None):
        """Build from a dense ``(..., 3, 3)`` matrix.

        With ``tol`` set, the matrix is checked to be circulant within that
        relative tolerance.
        """
        m = np.asarray(m, dtype=np.complex128)
        out = cls(m[..., 0, 0], m[..., 1, 0], m[..., 2, 0], kind, ref_admittance)
        if tol is not None:
            scale = max(np.abs(m).max(), 1e-300)
            if np.abs(out.dense() - m).max() > tol * scale:
                raise ValueError("matrix is not cyclic-symmetric")
        return out

    def eigenvalues(self):
        """Circulant eigenvalues ``(d+f+b, d+f w*+b w, d+f w+b w*)``."""
        d, f, b = self.diag, self.fwd, self.bwd
        return (d + f + b, d + f * np.conj(_W) + b * _W, d + f * _W + b * np.conj(_W))

    def at(self, index):
        """Entry set at one grid index."""
        return CyclicThreePort(
            np.asarray(self.diag)[index], np.asarray(self.fwd)[index], np.asarray(self.bwd)[index],
            self.kind, self.ref_admittance,
        )


@dataclass(frozen=True)
class TwoPortS:
    """Reciprocal two-port: ``[[r, m], [m, t]]``.

    Port 1 faces the external reference port, port 2 faces the junction.
    """

    r: complex
    t: complex
    m: complex

    def dense(self):
        r, t, m = np.broadcast_arrays(*(np.asarray(v, dtype=np.complex128) for v in (self.r, self.t, self.m)))
        return np.stack([np.stack([r, m], axis=-1), np.stack([m, t], axis=-1)], axis=-2)


THROUGH = TwoPortS(0.0, 0.0, 1.0)


def s_to_y(s, y0=None):
    """Scattering to admittance, ``Y = y0 (U + S)^-1 (U - S)``."""
    if s.kind is not Kind.SCATTERING:
        raise TypeError("s_to_y expects a scattering matrix")
    y0 = s.ref_admittance if y0 is None else y0
    if y0 is None:
        raise ValueError("reference admittance required")
    d, f, b, cond = kernels.cyclic_convert(s.diag, s.fwd, s.bwd, float(y0), True)
    if not cond < COND_LIMIT:
        raise SingularConversion(f"U + S is singular (condition number {cond:.3g})")
    return CyclicThreePort(_squeeze(d, s), _squeeze(f, s), _squeeze(b, s), Kind.ADMITTANCE)


def y_to_s(y, y0):
    """Admittance to scattering, ``S = (y0 U + Y)^-1 (y0 U - Y)``."""
    if y.kind is not Kind.ADMITTANCE:
        raise TypeError("y_to_s expects an admittance matrix")
    d, f, b, cond = kernels.cyclic_convert(y.diag, y.fwd, y.bwd, float(y0), False)
    if not cond < COND_LIMIT:
        raise SingularConversion(f"y0 U + Y is singular (condition number {cond:.3g})")
    return CyclicThreePort(_squeeze(d, y), _squeeze(f, y), _squeeze(b, y), Kind.SCATTERING, float(y0))


def _squeeze(v, like):
    return np.asarray(v).reshape(like.shape) if like.shape else complex(np.asarray(v).ravel()[0])


class Passivity(Enum):
    LOSSLESS = "lossless"
    PASSIVE = "passive"
    ACTIVE = "active"


@dataclass(frozen=True)
class PassivityVerdict:
    status: Passivity
    margin: float  # smallest eigenvalue of the Hermitian part, siemens


def hermitian_eigenvalues(y):
    """Eigenvalues of ``(Y + Y^H)/2``; for a circulant these are ``Re(lambda_k)``."""
    return np.stack([np.real(lam) for lam in y.eigenvalues()], axis=-1)


def check_passivity(y, tol=PASSIVITY_TOL):
    eig = hermitian_eigenvalues(y)
    margin = float(eig.min())
    if np.abs(eig).max() <= tol:
        return PassivityVerdict(Passivity.LOSSLESS, margin)
    if margin >= -tol:
        return PassivityVerdict(Passivity.PASSIVE, margin)
    return PassivityVerdict(Passivity.ACTIVE, margin)


def db(x):
    """``20 log10 |x|``."""
    return 20.0 * np.log10(np.abs(x))
