"""Inner products on the orientation sphere by numerical quadrature.

theta uses Gauss-Legendre nodes mapped from [-1, 1] to [0, pi], which keeps
every node strictly interior, away from the sqrt(sin(theta)) branch points
at the poles.  phi uses the equispaced trapezoid rule over one full period;
on a periodic integrand this is exact for trigonometric polynomials whose
degree is below the node count, which covers every product of basis
harmonics used here.

Integrands are taken either as plain callables (theta, phi) -> complex or
as objects with a .value attribute holding such a callable.  Any non-finite
integrand value aborts the integration instead of silently polluting the
sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import AngleDomainError, CoverConvention

__all__ = [
    "NonFiniteIntegrandError",
    "QuadratureSpec",
    "DEFAULT_SPEC",
    "FOUR_ANGLE_DEFAULT_SPEC",
    "theta_rule",
    "phi_rule",
    "grid_values",
    "full_inner_product",
    "phi_inner_product",
    "four_angle_inner_product",
]


class NonFiniteIntegrandError(ArithmeticError):
    """Raised when an integrand evaluates to NaN or infinity at a node."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and cover convention for sphere quadrature."""

    n_theta: int = 64
    n_phi: int = 64
    cover: CoverConvention = CoverConvention.SINGLE

    def __post_init__(self) -> None:
        if self.n_theta < 4:
            raise ValueError(f"n_theta must be at least 4, got {self.n_theta}")
        if self.n_phi < 4 or self.n_phi % 2:
            raise ValueError(
                f"n_phi must be even and at least 4, got {self.n_phi}"
            )

    @property
    def period(self) -> float:
        return self.cover.period


DEFAULT_SPEC = QuadratureSpec()

# Four-angle products scale as (n_theta * n_phi)**2 nodes, so the default
# is deliberately coarser than the single-electron default.
FOUR_ANGLE_DEFAULT_SPEC = QuadratureSpec(n_theta=32, n_phi=16)


def theta_rule(spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to the interval [0, pi]."""
    x, w = np.polynomial.legendre.leggauss(spec.n_theta)
    return 0.5 * math.pi * (x + 1.0), 0.5 * math.pi * w


def phi_rule(spec: QuadratureSpec) -> tuple[np.ndarray, float]:
    """Equispaced phi nodes over one period and the common weight.

    The right endpoint is omitted; by periodicity it duplicates the left
    one, so the plain node sum times the spacing is the trapezoid rule.
    """
    period = spec.period
    nodes = np.arange(spec.n_phi) * (period / spec.n_phi)
    return nodes, period / spec.n_phi


def _as_map(f):
    return getattr(f, "value", f)


def _label(f, fallback: str) -> str:
    return getattr(f, "label", "") or fallback


def grid_values(fn, *args, shape=None) -> np.ndarray:
    """Evaluate a map on broadcastable angle arrays as complex values.

    Falls back to elementwise evaluation for callables written against
    scalar math functions.
    """
    if shape is None:
        shape = np.broadcast_shapes(*(np.shape(a) for a in args))
    try:
        vals = np.asarray(fn(*args), dtype=complex)
        return np.broadcast_to(vals, shape)
    except (TypeError, ValueError):
        vals = np.vectorize(fn, otypes=[complex])(*args)
        return np.broadcast_to(np.asarray(vals, dtype=complex), shape)


def _require_finite(vals: np.ndarray, where: str) -> None:
    if not np.all(np.isfinite(vals)):
        raise NonFiniteIntegrandError(
            f"non-finite integrand value in {where}; aborting integration"
        )


def full_inner_product(f, g, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """<f|g> over the sphere: integral of conj(f) g sin(theta) dtheta dphi."""
    th, wt = theta_rule(spec)
    ph, wp = phi_rule(spec)
    t = th[:, None]
    p = ph[None, :]
    shape = (spec.n_theta, spec.n_phi)
    fv = grid_values(_as_map(f), t, p, shape=shape)
    gv = grid_values(_as_map(g), t, p, shape=shape)
    _require_finite(fv, _label(f, "left factor"))
    _require_finite(gv, _label(g, "right factor"))
    integrand = np.conj(fv) * gv * np.sin(t) * wt[:, None]
    return complex(np.sum(integrand) * wp)


def phi_inner_product(
    f, g, theta: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> complex:
    """Circle inner product at fixed theta: integral of conj(f) g dphi.

    No sin(theta) factor is included; this is the bare phi integral that
    already separates the two basis harmonics at every interior theta.
    """
    if not 0.0 < theta < math.pi:
        raise AngleDomainError(
            f"theta must be strictly inside (0, pi), got {theta!r}"
        )
    ph, wp = phi_rule(spec)
    fv = grid_values(_as_map(f), theta, ph, shape=ph.shape)
    gv = grid_values(_as_map(g), theta, ph, shape=ph.shape)
    _require_finite(fv, _label(f, "left factor"))
    _require_finite(gv, _label(g, "right factor"))
    return complex(np.sum(np.conj(fv) * gv) * wp)


def four_angle_inner_product(
    F, G, spec: QuadratureSpec = FOUR_ANGLE_DEFAULT_SPEC
) -> complex:
    """<F|G> for two-orientation maps F(theta1, phi1, theta2, phi2).

    The measure is sin(theta1) sin(theta2) dtheta1 dphi1 dtheta2 dphi2 with
    each phi integrated over one period of the chosen cover.  Cost and
    memory scale as (n_theta * n_phi)**2, so keep the spec moderate.
    """
    th, wt = theta_rule(spec)
    ph, wp = phi_rule(spec)
    t1 = th[:, None, None, None]
    p1 = ph[None, :, None, None]
    t2 = th[None, None, :, None]
    p2 = ph[None, None, None, :]
    shape = (spec.n_theta, spec.n_phi, spec.n_theta, spec.n_phi)
    fv = grid_values(_as_map(F), t1, p1, t2, p2, shape=shape)
    gv = grid_values(_as_map(G), t1, p1, t2, p2, shape=shape)
    _require_finite(fv, _label(F, "left factor"))
    _require_finite(gv, _label(G, "right factor"))
    weight = (
        wt[:, None, None, None]
        * wt[None, None, :, None]
        * np.sin(t1)
        * np.sin(t2)
    )
    return complex(np.sum(np.conj(fv) * gv * weight) * wp * wp)
