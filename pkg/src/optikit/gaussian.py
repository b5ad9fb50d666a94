"""Gaussian-beam q parameter and the ABCD propagation law.

The complex beam parameter bundles wavefront curvature R and spot radius w:

    1/q = 1/R - j * wavelength / (pi * w**2)

with wavelength measured in the local medium (lambda_medium =
lambda_vacuum / n).  A ray-transfer matrix [[A, B], [C, D]] acts on q by the
Moebius law q_out = (A q + B) / (C q + D).

On-axis geometry of a beam with waist w0 follows from q(z) = z + j*zR with
zR = pi w0**2 / wavelength:

    w(z) = w0 * sqrt(1 + (z/zR)**2)
    R(z) = z * (1 + (zR/z)**2),  flat (infinite R) at z = 0

These forms are forced by the q parameter itself: `beam_at` is cross-checked
in the tests against free-space Moebius propagation of the waist q.  A flat
wavefront is represented by an infinite radius (math.inf), printed as
"R=inf" by the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Mat2, mobius
from .errors import DomainError, UnphysicalBeam

__all__ = [
    "FLAT",
    "QParameter",
    "BeamGeometry",
    "q_from_geometry",
    "geometry_from_q",
    "propagate_q",
    "beam_at",
]

# Wavefront radius of a flat (waist) wavefront.
FLAT = math.inf


@dataclass(frozen=True)
class QParameter:
    """Complex beam parameter q (meters) with its in-medium wavelength."""

    q: complex
    wavelength: float

    def __post_init__(self) -> None:
        if not self.wavelength > 0:
            raise DomainError(f"wavelength must be positive, got {self.wavelength!r}")
        if not self.q.imag > 0:
            raise UnphysicalBeam(f"Im(q) must be positive, got q = {self.q!r}")


@dataclass(frozen=True)
class BeamGeometry:
    """On-axis beam geometry at distance z from the waist.

    R: wavefront radius of curvature (FLAT at the waist)
    w: spot radius, w0: waist radius, zR: Rayleigh range, z: axial position.
    """

    R: float
    w: float
    w0: float
    zR: float
    z: float


def q_from_geometry(R: float, w: float, wavelength: float) -> QParameter:
    """Build q from wavefront radius R (may be FLAT/inf) and spot radius w."""
    if not w > 0:
        raise DomainError(f"spot radius must be positive, got {w!r}")
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    if R == 0:
        raise DomainError("wavefront radius must be nonzero (use FLAT for a flat front)")
    inv_r = 0.0 if math.isinf(R) else 1.0 / R
    inv_q = complex(inv_r, -wavelength / (math.pi * w * w))
    return QParameter(1.0 / inv_q, wavelength)


def geometry_from_q(qp: QParameter) -> tuple[float, float]:
    """Recover (R, w) from q; R is FLAT when the wavefront is flat."""
    if not qp.q.imag > 0:
        raise UnphysicalBeam(f"Im(q) must be positive, got q = {qp.q!r}")
    inv_q = 1.0 / qp.q
    if abs(inv_q.real) < 1e-15 * abs(inv_q):
        r = FLAT
    else:
        r = 1.0 / inv_q.real
    w = math.sqrt(qp.wavelength / (math.pi * (-inv_q.imag)))
    return (r, w)


def propagate_q(qp: QParameter, m: Mat2) -> QParameter:
    """ABCD law: q -> (A q + B) / (C q + D); wavelength is unchanged.

    Any real matrix with positive determinant keeps Im(q) positive, so the
    result is again a physical beam.
    """
    return QParameter(mobius(m, qp.q), qp.wavelength)


def beam_at(w0: float, wavelength: float, z: float) -> BeamGeometry:
    """Geometry of a beam with waist radius w0 at axial distance z from it."""
    if not w0 > 0:
        raise DomainError(f"waist radius must be positive, got {w0!r}")
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    z_r = math.pi * w0 * w0 / wavelength
    w = w0 * math.sqrt(1.0 + (z / z_r) ** 2)
    r = FLAT if z == 0 else z * (1.0 + (z_r / z) ** 2)
    return BeamGeometry(R=r, w=w, w0=w0, zR=z_r, z=z)
