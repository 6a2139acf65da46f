"""Matrix representation of spin-1/2, independent of any coordinates.

This module is the reference implementation the wavefunction machinery is
checked against.  States are two-component column vectors, operators are
2x2 Hermitian matrices built from the Pauli set times 1/2 (hbar = 1), and
nothing here touches theta, phi, derivatives, or quadrature.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .harmonics import AngleDomainError
from .harmonics import alpha as alpha_harmonic
from .harmonics import beta as beta_harmonic
from .harmonics import harmonic_values
from .quadrature import DEFAULT_SPEC, QuadratureSpec, full_inner_product

__all__ = [
    "NORM_TOL",
    "BETA_COMPONENT_SIGN",
    "Spinor2",
    "ALPHA_SPINOR",
    "BETA_SPINOR",
    "Direction",
    "antipode",
    "direction_to_unit",
    "unit_to_direction",
    "SpinMatrix",
    "spin_x",
    "spin_y",
    "spin_z",
    "spin_squared",
    "spin_along",
    "apply_matrix",
    "spinor_dot",
    "expectation",
    "bloch_state",
    "EigencheckReport",
    "abstract_eigencheck",
    "OrthonormalityReport",
    "orthonormality_check",
    "project_to_spinor",
]

NORM_TOL = 1e-12

# Sign convention for the spin-down column vector.  Both (0, 1) and
# (0, -1) are in circulation; the choice is a phase on one basis element
# with no observable consequence.  Everything routes through this constant
# so the alternate convention is a one-line change.
BETA_COMPONENT_SIGN = 1.0


@dataclass(frozen=True)
class Spinor2:
    """Two-component spin state (c_alpha, c_beta)."""

    c_alpha: complex
    c_beta: complex

    def __post_init__(self) -> None:
        ca = complex(self.c_alpha)
        cb = complex(self.c_beta)
        if not (cmath.isfinite(ca) and cmath.isfinite(cb)):
            raise ValueError(f"components must be finite, got {ca!r}, {cb!r}")
        object.__setattr__(self, "c_alpha", ca)
        object.__setattr__(self, "c_beta", cb)

    def norm(self) -> float:
        return math.hypot(abs(self.c_alpha), abs(self.c_beta))

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm() - 1.0) <= NORM_TOL

    def normalized(self) -> "Spinor2":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero spinor")
        return Spinor2(self.c_alpha / n, self.c_beta / n)

    def as_array(self) -> np.ndarray:
        return np.array([self.c_alpha, self.c_beta], dtype=complex)


ALPHA_SPINOR = Spinor2(1.0, 0.0)
BETA_SPINOR = Spinor2(0.0, BETA_COMPONENT_SIGN)


@dataclass(frozen=True)
class Direction:
    """A measurement axis given by polar angles, theta in [0, pi]."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        th = float(self.theta)
        ph = float(self.phi)
        if not (math.isfinite(th) and math.isfinite(ph)):
            raise AngleDomainError(f"direction angles must be finite, got {th!r}, {ph!r}")
        if not 0.0 <= th <= math.pi:
            raise AngleDomainError(f"direction theta must lie in [0, pi], got {th!r}")
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "phi", ph)


def antipode(d: Direction) -> Direction:
    """The opposite point on the sphere."""
    return Direction(math.pi - d.theta, math.fmod(d.phi + math.pi, 2.0 * math.pi))


def direction_to_unit(d: Direction) -> np.ndarray:
    """Cartesian unit vector for a direction."""
    s = math.sin(d.theta)
    return np.array([s * math.cos(d.phi), s * math.sin(d.phi), math.cos(d.theta)])


def unit_to_direction(v) -> Direction:
    """Direction of a nonzero 3-vector."""
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n == 0.0 or not math.isfinite(n):
        raise ValueError(f"cannot take the direction of {v!r}")
    x, y, z = (v / n).tolist()
    theta = math.acos(min(1.0, max(-1.0, z)))
    phi = math.atan2(y, x) % (2.0 * math.pi)
    return Direction(theta, phi)


@dataclass(frozen=True)
class SpinMatrix:
    """A 2x2 Hermitian spin operator."""

    entries: tuple[tuple[complex, complex], tuple[complex, complex]]
    tag: str = ""

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"entries must be 2x2, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ValueError(f"spin matrix {self.tag or m!r} is not Hermitian")

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


def spin_x() -> SpinMatrix:
    return SpinMatrix(((0.0, 0.5), (0.5, 0.0)), tag="Sx")


def spin_y() -> SpinMatrix:
    return SpinMatrix(((0.0, -0.5j), (0.5j, 0.0)), tag="Sy")


def spin_z() -> SpinMatrix:
    return SpinMatrix(((0.5, 0.0), (0.0, -0.5)), tag="Sz")


def spin_squared() -> SpinMatrix:
    return SpinMatrix(((0.75, 0.0), (0.0, 0.75)), tag="S2")


def spin_along(d: Direction) -> SpinMatrix:
    """Spin component along an arbitrary axis: n . (Sx, Sy, Sz)."""
    ct, st = math.cos(d.theta), math.sin(d.theta)
    ph = cmath.exp(1j * d.phi)
    return SpinMatrix(
        (
            (0.5 * ct, 0.5 * st * ph.conjugate()),
            (0.5 * st * ph, -0.5 * ct),
        ),
        tag=f"S.n(theta={d.theta:g}, phi={d.phi:g})",
    )


def apply_matrix(m: SpinMatrix, s: Spinor2) -> Spinor2:
    (a, b), (c, d) = m.entries
    return Spinor2(a * s.c_alpha + b * s.c_beta, c * s.c_alpha + d * s.c_beta)


def spinor_dot(a: Spinor2, b: Spinor2) -> complex:
    """Hermitian inner product <a|b>."""
    return (
        a.c_alpha.conjugate() * b.c_alpha + a.c_beta.conjugate() * b.c_beta
    )


def expectation(s: Spinor2, m: SpinMatrix) -> float:
    """<s|M|s> for a normalized state.  Real by Hermiticity."""
    if not s.is_normalized:
        raise ValueError(
            f"expectation values need a normalized state, norm was {s.norm()!r}"
        )
    return spinor_dot(s, apply_matrix(m, s)).real


def bloch_state(d: Direction) -> Spinor2:
    """The spin-up eigenstate of spin_along(d)."""
    half = 0.5 * d.theta
    return Spinor2(math.cos(half), cmath.exp(1j * d.phi) * math.sin(half))


@dataclass(frozen=True)
class EigencheckReport:
    """Exact matrix eigen-relations for one basis spinor."""

    spinor: Spinor2
    s2_eigenvalue: float
    sz_eigenvalue: float
    max_residual: float


def abstract_eigencheck(s: Spinor2) -> EigencheckReport:
    """Confirm S^2 and Sz eigen-relations for a basis spinor.

    Only the two basis column vectors are accepted; anything else is not
    an Sz eigenstate and the caller is told so instead of getting a
    meaningless eigenvalue back.
    """
    if s == ALPHA_SPINOR:
        sz = 0.5
    elif s == BETA_SPINOR:
        sz = -0.5
    else:
        raise ValueError(
            f"{s!r} is not one of the basis spinors; eigencheck is only "
            "defined for them"
        )
    v = s.as_array()
    r2 = np.max(np.abs(spin_squared().as_array() @ v - 0.75 * v))
    rz = np.max(np.abs(spin_z().as_array() @ v - sz * v))
    return EigencheckReport(
        spinor=s,
        s2_eigenvalue=0.75,
        sz_eigenvalue=sz,
        max_residual=float(max(r2, rz)),
    )


@dataclass(frozen=True)
class OrthonormalityReport:
    """Pairwise inner products of the basis spinors."""

    alpha_alpha: complex
    alpha_beta: complex
    beta_alpha: complex
    beta_beta: complex

    @property
    def max_deviation(self) -> float:
        return max(
            abs(self.alpha_alpha - 1.0),
            abs(self.alpha_beta),
            abs(self.beta_alpha),
            abs(self.beta_beta - 1.0),
        )


def orthonormality_check() -> OrthonormalityReport:
    return OrthonormalityReport(
        alpha_alpha=spinor_dot(ALPHA_SPINOR, ALPHA_SPINOR),
        alpha_beta=spinor_dot(ALPHA_SPINOR, BETA_SPINOR),
        beta_alpha=spinor_dot(BETA_SPINOR, ALPHA_SPINOR),
        beta_beta=spinor_dot(BETA_SPINOR, BETA_SPINOR),
    )


def project_to_spinor(f, spec: QuadratureSpec = DEFAULT_SPEC) -> Spinor2:
    """Components of a wavefunction in the harmonic basis, by quadrature.

    Returns (<alpha|f>, <beta|f>) under the spec's cover convention.  Any
    content outside the two-dimensional spin space (higher phi modes, for
    instance) simply projects to zero and is discarded.
    """
    a = alpha_harmonic(spec.cover)
    b = beta_harmonic(spec.cover)
    ca = full_inner_product(lambda th, ph: harmonic_values(a, th, ph), f, spec)
    cb = full_inner_product(lambda th, ph: harmonic_values(b, th, ph), f, spec)
    return Spinor2(ca, cb)
