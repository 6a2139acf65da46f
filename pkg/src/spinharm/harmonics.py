"""Half-integer spherical harmonics for a single spin-1/2 orientation.

The two basis functions on the orientation sphere are

    alpha(theta, phi) = N * sqrt(sin(theta)) * exp(+i*phi/2)     (spin up)
    beta(theta, phi)  = N * sqrt(sin(theta)) * exp(-i*phi/2)     (spin down)

where the normalization constant N depends on how much of the phi circle
is counted as one copy of the configuration space:

    single cover: phi in [0, 2*pi), N = 1/pi
    double cover: phi in [0, 4*pi), N = 1/(pi*sqrt(2))

On the single cover the functions are double valued: advancing phi by one
full turn multiplies the value by -1 and only a 4*pi advance restores it.
The probability density N**2 * sin(theta) carries no phi dependence, so it
is single valued under either convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "AngleDomainError",
    "CoverConvention",
    "AnglePair",
    "SpinHarmonic",
    "alpha",
    "beta",
    "eval_harmonic",
    "harmonic_values",
    "density",
    "cover_sign",
]


class AngleDomainError(ValueError):
    """Raised when an angle lies outside the documented domain."""


class CoverConvention(Enum):
    """Choice of phi period for the orientation sphere."""

    SINGLE = "single"
    DOUBLE = "double"

    @property
    def period(self) -> float:
        """Length of one phi cycle under this convention."""
        return 2.0 * math.pi if self is CoverConvention.SINGLE else 4.0 * math.pi

    @property
    def norm_constant(self) -> float:
        """Normalization constant that makes the harmonics unit norm."""
        if self is CoverConvention.SINGLE:
            return 1.0 / math.pi
        return 1.0 / (math.pi * math.sqrt(2.0))


@dataclass(frozen=True)
class AnglePair:
    """A point (theta, phi) on the orientation sphere.

    theta is the polar angle and must lie in [0, pi].  phi is unrestricted
    (the harmonics are defined for any real phi) but must be finite.
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise AngleDomainError(
                f"angles must be finite, got theta={self.theta!r} phi={self.phi!r}"
            )
        if not 0.0 <= self.theta <= math.pi:
            raise AngleDomainError(
                f"theta must lie in [0, pi], got {self.theta!r}"
            )


@dataclass(frozen=True)
class SpinHarmonic:
    """One of the two l = 1/2 basis functions under a cover convention."""

    m: float
    cover: CoverConvention = CoverConvention.SINGLE
    ell: float = 0.5
    norm_constant: float = field(default=0.0)

    def __post_init__(self) -> None:
        if self.ell != 0.5:
            raise ValueError(f"only ell = 1/2 is supported, got {self.ell!r}")
        if self.m not in (0.5, -0.5):
            raise ValueError(f"m must be +1/2 or -1/2, got {self.m!r}")
        expected = self.cover.norm_constant
        if self.norm_constant == 0.0:
            object.__setattr__(self, "norm_constant", expected)
        elif not math.isclose(self.norm_constant, expected, rel_tol=1e-12):
            raise ValueError(
                f"norm_constant {self.norm_constant!r} does not match the "
                f"{self.cover.value} cover value {expected!r}"
            )

    @property
    def label(self) -> str:
        return "alpha" if self.m > 0 else "beta"


def alpha(cover: CoverConvention = CoverConvention.SINGLE) -> SpinHarmonic:
    """Spin-up basis function, m = +1/2."""
    return SpinHarmonic(m=0.5, cover=cover)


def beta(cover: CoverConvention = CoverConvention.SINGLE) -> SpinHarmonic:
    """Spin-down basis function, m = -1/2."""
    return SpinHarmonic(m=-0.5, cover=cover)


def eval_harmonic(h: SpinHarmonic, a: AnglePair) -> complex:
    """Value of the harmonic at a single validated point.

    The exact endpoints theta = 0 and theta = pi return exactly 0j, which
    avoids the 1e-16 residue that float sin(pi) would otherwise leak into
    the square root.
    """
    if a.theta == 0.0 or a.theta == math.pi:
        return 0j
    return h.norm_constant * math.sqrt(math.sin(a.theta)) * cmath.exp(
        1j * h.m * a.phi
    )


def harmonic_values(h: SpinHarmonic, theta, phi) -> np.ndarray:
    """Vectorized harmonic values on broadcastable angle arrays.

    No domain validation is performed; intended for quadrature grids whose
    nodes are already interior points.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return h.norm_constant * np.sqrt(np.sin(theta)) * np.exp(1j * h.m * phi)


def density(h: SpinHarmonic, a: AnglePair) -> float:
    """Probability density |Y|^2 = N**2 * sin(theta).  Independent of phi."""
    if a.theta == 0.0 or a.theta == math.pi:
        return 0.0
    return h.norm_constant**2 * math.sin(a.theta)


def cover_sign(h: SpinHarmonic, a: AnglePair, winding: int) -> int:
    """Sign relating Y(theta, phi + winding*2*pi) to Y(theta, phi).

    Each full phi turn contributes one factor of -1, so the sign is
    (-1)**winding regardless of the base point.
    """
    if not isinstance(winding, int):
        raise TypeError(f"winding must be an integer, got {winding!r}")
    return -1 if winding % 2 else 1
