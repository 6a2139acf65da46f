"""Angular momentum operators acting on orientation-sphere wavefunctions.

All operators are differential expressions in the polar pair (theta, phi),
in units where hbar = 1:

    Sz     = (1/i) d/dphi
    S^2    = -[ d2/dtheta2 + cot(theta) d/dtheta + (1/sin^2 theta) d2/dphi2 ]
    S+/-   = exp(+/- i phi) [ +/- d/dtheta + i cot(theta) d/dphi ]

Fields carry an optional set of analytic partial derivatives.  When every
partial an operator needs is present it is used directly; otherwise the
operator falls back to central finite differences of the field value.  The
fallback is second order, which is plenty on the open sphere but collapses
near the poles where the sqrt(sin(theta)) profile has unbounded higher
derivatives.  Pointwise residual scans therefore run on a uniform grid
inset by RESIDUAL_GRID_MARGIN from both poles; integral (Rayleigh) checks
use the full Gauss-Legendre grid, whose weights already suppress the pole
neighborhoods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .harmonics import AnglePair, CoverConvention, SpinHarmonic
from .harmonics import alpha as alpha_harmonic
from .harmonics import beta as beta_harmonic
from .harmonics import harmonic_values
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    full_inner_product,
    grid_values,
    phi_rule,
    theta_rule,
)

__all__ = [
    "PoleProximityError",
    "POLE_GUARD",
    "DEFAULT_FD_STEP",
    "RESIDUAL_GRID_MARGIN",
    "SpinorField",
    "alpha_field",
    "beta_field",
    "superposition",
    "apply_S2",
    "apply_Sz",
    "apply_Splus",
    "apply_Sminus",
    "operator_field",
    "OperatorResidual",
    "residual_grid",
    "eigen_residual",
    "LadderDefectReport",
    "ladder_defect",
    "verify_analytic_partials",
]

# Reject evaluation closer than this to either pole, where cot(theta) and
# 1/sin^2(theta) overflow any useful precision.
POLE_GUARD = 1e-6

DEFAULT_FD_STEP = 1e-4

# Margin for pointwise residual grids.  Central differences of the
# sqrt(sin) profile have truncation error growing like theta**-3.5 toward
# a pole; at step 1e-4 this margin keeps the worst interior residual near
# 2e-7, with everything past the margin strictly better.
RESIDUAL_GRID_MARGIN = 0.15

AngleMap = Callable[..., complex]


class PoleProximityError(ValueError):
    """Raised when an operator is evaluated too close to a coordinate pole."""


@dataclass(frozen=True)
class SpinorField:
    """A scalar wavefunction on the orientation sphere.

    value maps (theta, phi) to a complex amplitude and must accept numpy
    arrays (scalar-only callables are tolerated but slower).  The partial
    derivative slots are optional; an operator uses them only when every
    partial it needs is available, otherwise it differentiates value
    numerically.
    """

    value: AngleMap
    dtheta: Optional[AngleMap] = None
    dtheta2: Optional[AngleMap] = None
    dphi: Optional[AngleMap] = None
    dphi2: Optional[AngleMap] = None
    label: str = ""

    def value_only(self) -> "SpinorField":
        """Copy with the partials dropped, forcing the finite difference path."""
        return SpinorField(value=self.value, label=self.label)

    def has_partials(self, names: tuple[str, ...]) -> bool:
        return all(getattr(self, n) is not None for n in names)


_S2_PARTIALS = ("dtheta", "dtheta2", "dphi2")
_SZ_PARTIALS = ("dphi",)
_LADDER_PARTIALS = ("dtheta", "dphi")


def _harmonic_field(h: SpinHarmonic) -> SpinorField:
    n, m = h.norm_constant, h.m

    def value(th, ph):
        return harmonic_values(h, th, ph)

    def dtheta(th, ph):
        th = np.asarray(th, dtype=float)
        return n * np.cos(th) / (2.0 * np.sqrt(np.sin(th))) * np.exp(1j * m * np.asarray(ph))

    def dtheta2(th, ph):
        th = np.asarray(th, dtype=float)
        s = np.sin(th)
        radial = 0.5 * np.sqrt(s) + 0.25 * np.cos(th) ** 2 * s**-1.5
        return -n * radial * np.exp(1j * m * np.asarray(ph))

    def dphi(th, ph):
        return 1j * m * value(th, ph)

    def dphi2(th, ph):
        return -(m * m) * value(th, ph)

    return SpinorField(value, dtheta, dtheta2, dphi, dphi2, label=h.label)


def alpha_field(cover: CoverConvention = CoverConvention.SINGLE) -> SpinorField:
    """Spin-up basis function with analytic partials attached."""
    return _harmonic_field(alpha_harmonic(cover))


def beta_field(cover: CoverConvention = CoverConvention.SINGLE) -> SpinorField:
    """Spin-down basis function with analytic partials attached."""
    return _harmonic_field(beta_harmonic(cover))


def superposition(
    c_alpha: complex,
    c_beta: complex,
    cover: CoverConvention = CoverConvention.SINGLE,
    label: str = "",
) -> SpinorField:
    """Linear combination c_alpha * alpha + c_beta * beta with partials."""
    fa = alpha_field(cover)
    fb = beta_field(cover)

    def combine(name: str) -> AngleMap:
        ga = getattr(fa, name)
        gb = getattr(fb, name)
        return lambda th, ph: c_alpha * ga(th, ph) + c_beta * gb(th, ph)

    return SpinorField(
        value=combine("value"),
        dtheta=combine("dtheta"),
        dtheta2=combine("dtheta2"),
        dphi=combine("dphi"),
        dphi2=combine("dphi2"),
        label=label or "superposition",
    )


def _fd_partial(fn: AngleMap, t, p, h: float, wrt: str, order: int) -> np.ndarray:
    # A large step can push a theta probe past a pole, where sqrt(sin)
    # goes NaN; let the non-finite value surface in the residual instead
    # of spamming warnings.
    shape = np.broadcast_shapes(np.shape(t), np.shape(p))
    with np.errstate(invalid="ignore", divide="ignore"):
        if wrt == "theta":
            hi = grid_values(fn, t + h, p, shape=shape)
            lo = grid_values(fn, t - h, p, shape=shape)
        else:
            hi = grid_values(fn, t, p + h, shape=shape)
            lo = grid_values(fn, t, p - h, shape=shape)
        if order == 1:
            return (hi - lo) / (2.0 * h)
        mid = grid_values(fn, t, p, shape=shape)
        return (hi - 2.0 * mid + lo) / (h * h)


def _s2_values(f: SpinorField, t, p, fd_step: float) -> np.ndarray:
    shape = np.broadcast_shapes(np.shape(t), np.shape(p))
    if f.has_partials(_S2_PARTIALS):
        d1 = grid_values(f.dtheta, t, p, shape=shape)
        d2 = grid_values(f.dtheta2, t, p, shape=shape)
        dpp = grid_values(f.dphi2, t, p, shape=shape)
    else:
        d1 = _fd_partial(f.value, t, p, fd_step, "theta", 1)
        d2 = _fd_partial(f.value, t, p, fd_step, "theta", 2)
        dpp = _fd_partial(f.value, t, p, fd_step, "phi", 2)
    s = np.sin(np.asarray(t, dtype=float))
    c = np.cos(np.asarray(t, dtype=float))
    return -(d2 + (c / s) * d1 + dpp / (s * s))


def _sz_values(f: SpinorField, t, p, fd_step: float) -> np.ndarray:
    if f.has_partials(_SZ_PARTIALS):
        shape = np.broadcast_shapes(np.shape(t), np.shape(p))
        dp = grid_values(f.dphi, t, p, shape=shape)
    else:
        dp = _fd_partial(f.value, t, p, fd_step, "phi", 1)
    return -1j * dp


def _ladder_values(f: SpinorField, t, p, sign: float, fd_step: float) -> np.ndarray:
    shape = np.broadcast_shapes(np.shape(t), np.shape(p))
    if f.has_partials(_LADDER_PARTIALS):
        d1 = grid_values(f.dtheta, t, p, shape=shape)
        dp = grid_values(f.dphi, t, p, shape=shape)
    else:
        d1 = _fd_partial(f.value, t, p, fd_step, "theta", 1)
        dp = _fd_partial(f.value, t, p, fd_step, "phi", 1)
    t = np.asarray(t, dtype=float)
    cot = np.cos(t) / np.sin(t)
    return np.exp(sign * 1j * np.asarray(p)) * (sign * d1 + 1j * cot * dp)


_OPERATORS = {
    "S2": (_s2_values, _S2_PARTIALS),
    "Sz": (_sz_values, _SZ_PARTIALS),
}


def _require_interior(theta: float, margin: float) -> None:
    lo = max(POLE_GUARD, margin)
    if theta < lo or theta > math.pi - lo:
        raise PoleProximityError(
            f"theta={theta!r} is within {lo:g} of a pole; the operator is "
            "not reliably computable there"
        )


def _apply_scalar(values_fn, f: SpinorField, a: AnglePair, needed, fd_step, *extra):
    if fd_step <= 0.0 or not math.isfinite(fd_step):
        raise ValueError(f"fd_step must be positive and finite, got {fd_step!r}")
    margin = 0.0 if f.has_partials(needed) else fd_step
    _require_interior(a.theta, margin)
    return complex(values_fn(f, a.theta, a.phi, *extra, fd_step))


def apply_S2(f: SpinorField, a: AnglePair, fd_step: float = DEFAULT_FD_STEP) -> complex:
    """Total spin squared of f at a point."""
    return _apply_scalar(_s2_values, f, a, _S2_PARTIALS, fd_step)


def apply_Sz(f: SpinorField, a: AnglePair, fd_step: float = DEFAULT_FD_STEP) -> complex:
    """Polar-axis spin component of f at a point."""
    return _apply_scalar(_sz_values, f, a, _SZ_PARTIALS, fd_step)


def apply_Splus(f: SpinorField, a: AnglePair, fd_step: float = DEFAULT_FD_STEP) -> complex:
    """Raising combination at a point."""
    return _apply_scalar(_ladder_values, f, a, _LADDER_PARTIALS, fd_step, +1.0)


def apply_Sminus(f: SpinorField, a: AnglePair, fd_step: float = DEFAULT_FD_STEP) -> complex:
    """Lowering combination at a point."""
    return _apply_scalar(_ladder_values, f, a, _LADDER_PARTIALS, fd_step, -1.0)


def operator_field(
    operator_tag: str, f: SpinorField, fd_step: float = DEFAULT_FD_STEP
) -> SpinorField:
    """The operator applied to f, packaged as a new (value-only) field.

    Accepts S2, Sz, Splus, and Sminus.  Useful for forming quadrature
    expectation values such as <f|Sz f> without re-deriving formulas.
    """
    table = {
        "S2": lambda t, p: _s2_values(f, t, p, fd_step),
        "Sz": lambda t, p: _sz_values(f, t, p, fd_step),
        "Splus": lambda t, p: _ladder_values(f, t, p, +1.0, fd_step),
        "Sminus": lambda t, p: _ladder_values(f, t, p, -1.0, fd_step),
    }
    if operator_tag not in table:
        raise ValueError(
            f"unknown operator tag {operator_tag!r}; expected one of "
            f"{sorted(table)}"
        )
    label = f"{operator_tag} {f.label}".strip()
    return SpinorField(value=table[operator_tag], label=label)


@dataclass(frozen=True)
class OperatorResidual:
    """Eigen-relation diagnostics for one operator and one field."""

    operator_tag: str
    lambda_ref: float
    rayleigh_quotient: complex
    rayleigh_deviation: float
    max_pointwise_residual: float
    fd_channel: bool
    spec: QuadratureSpec


def residual_grid(spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Uniform pointwise-scan grid inset from the poles.

    Returns 1d theta and phi node arrays; theta spans
    [RESIDUAL_GRID_MARGIN, pi - RESIDUAL_GRID_MARGIN].
    """
    tg = np.linspace(RESIDUAL_GRID_MARGIN, math.pi - RESIDUAL_GRID_MARGIN, spec.n_theta)
    pg, _ = phi_rule(spec)
    return tg, pg


def eigen_residual(
    operator_tag: str,
    f: SpinorField,
    lambda_ref: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    fd_step: float = DEFAULT_FD_STEP,
) -> OperatorResidual:
    """Check operator f = lambda_ref f in both integral and pointwise form.

    The Rayleigh quotient <f|O f>/<f|f> is taken on the Gauss-Legendre by
    trapezoid product grid.  The pointwise residual max |O f - lambda f| is
    scanned on the inset uniform grid from residual_grid, so the finite
    difference channel is judged away from the poles where its truncation
    error is meaningful rather than astronomical.
    """
    if operator_tag not in _OPERATORS:
        raise ValueError(
            f"unknown operator tag {operator_tag!r}; expected one of "
            f"{sorted(_OPERATORS)}"
        )
    values_fn, needed = _OPERATORS[operator_tag]
    fd = not f.has_partials(needed)

    th, wt = theta_rule(spec)
    ph, wp = phi_rule(spec)
    t = th[:, None]
    p = ph[None, :]
    shape = (spec.n_theta, spec.n_phi)
    fv = grid_values(f.value, t, p, shape=shape)
    ov = values_fn(f, t, p, fd_step)
    s = np.sin(t)
    num = np.sum(np.conj(fv) * ov * s * wt[:, None]) * wp
    den = np.sum(np.abs(fv) ** 2 * s * wt[:, None]) * wp
    rayleigh = complex(num / den)

    tg, pg = residual_grid(spec)
    t2 = tg[:, None]
    p2 = pg[None, :]
    shape2 = (tg.size, pg.size)
    fv2 = grid_values(f.value, t2, p2, shape=shape2)
    ov2 = values_fn(f, t2, p2, fd_step)
    max_resid = float(np.max(np.abs(ov2 - lambda_ref * fv2)))

    return OperatorResidual(
        operator_tag=operator_tag,
        lambda_ref=lambda_ref,
        rayleigh_quotient=rayleigh,
        rayleigh_deviation=abs(rayleigh - lambda_ref),
        max_pointwise_residual=max_resid,
        fd_channel=fd,
        spec=spec,
    )


@dataclass(frozen=True)
class LadderDefectReport:
    """How far the raising operator lands from the spin-up basis function.

    The raised spin-down function has unit norm and is exactly orthogonal
    to the spin-up function, so the defect norm sits at sqrt(2): the raise
    produces a unit vector pointing nowhere along the target.
    """

    norm_of_raised_beta: float
    overlap_with_alpha: complex
    defect_norm: float
    spec: QuadratureSpec


def ladder_defect(spec: QuadratureSpec = DEFAULT_SPEC) -> LadderDefectReport:
    """Measure ||S+ beta||, <alpha|S+ beta>, and ||S+ beta - alpha||.

    In a representation where the raising operator connects the basis pair
    these would be 1, 1, and 0.  Here the raised function is
    cos(theta)/sqrt(sin(theta)) against the sqrt(sin(theta)) profile of the
    target, and the mismatch is what this report quantifies.
    """
    af = alpha_field(spec.cover)
    bf = beta_field(spec.cover)
    raised = operator_field("Splus", bf)

    def defect(th, ph):
        return raised.value(th, ph) - af.value(th, ph)

    norm2 = full_inner_product(raised, raised, spec).real
    overlap = full_inner_product(af.value, raised, spec)
    defect2 = full_inner_product(defect, defect, spec).real
    return LadderDefectReport(
        norm_of_raised_beta=math.sqrt(max(norm2, 0.0)),
        overlap_with_alpha=overlap,
        defect_norm=math.sqrt(max(defect2, 0.0)),
        spec=spec,
    )


def verify_analytic_partials(
    f: SpinorField,
    points,
    step: float = 1e-5,
) -> dict[str, float]:
    """Cross-check each stored partial against a finite difference probe.

    First partials are differenced from the field value.  Second partials
    are differenced from the stored analytic first partials: a direct
    second difference of the value at this step size would sit at about
    1e-5 relative roundoff, swamping the comparison, while the cascade
    keeps both probes near the step-squared truncation floor.

    Deviations are reported relative to the larger of the local analytic
    magnitude and the field's peak amplitude over the points, so zeros of
    a derivative do not blow up the ratio.  Returns a dict keyed by the
    partials that are present.
    """
    pts = [p if isinstance(p, AnglePair) else AnglePair(*p) for p in points]
    if not pts:
        raise ValueError("need at least one test point")
    present = [n for n in ("dtheta", "dtheta2", "dphi", "dphi2") if getattr(f, n) is not None]
    if not present:
        raise ValueError("field carries no analytic partials to verify")

    amplitude = max(abs(complex(f.value(p.theta, p.phi))) for p in pts)
    amplitude = max(amplitude, 1e-300)

    def central(fn, p: AnglePair, wrt: str) -> complex:
        if wrt == "theta":
            hi = complex(fn(p.theta + step, p.phi))
            lo = complex(fn(p.theta - step, p.phi))
        else:
            hi = complex(fn(p.theta, p.phi + step))
            lo = complex(fn(p.theta, p.phi - step))
        return (hi - lo) / (2.0 * step)

    base = {
        "dtheta": (f.value, "theta"),
        "dphi": (f.value, "phi"),
        "dtheta2": (f.dtheta, "theta"),
        "dphi2": (f.dphi, "phi"),
    }
    out: dict[str, float] = {}
    for name in present:
        fn, wrt = base[name]
        if fn is None:
            # A second partial without its first cannot use the cascade.
            continue
        worst = 0.0
        analytic = getattr(f, name)
        for p in pts:
            _require_interior(p.theta, step)
            an = complex(analytic(p.theta, p.phi))
            fd = central(fn, p, wrt)
            scale = max(abs(an), amplitude)
            worst = max(worst, abs(fd - an) / scale)
        out[name] = worst
    return out
