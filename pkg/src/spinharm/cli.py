"""Command line front end.

Subcommands:

    verify        run the built-in consistency checks, one line per check
    eval          evaluate a basis harmonic and its density at a point
    ip            inner products, either full-sphere or fixed-theta circle
    epr           two-channel correlation sweep as CSV or JSON
    ladder-probe  report how far raising the spin-down function lands
                  from the spin-up one

Exit codes: 0 all good, 1 a check or tolerance failed, 2 bad usage or
configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .entangle import (
    EPR_QUADRATURE_SPEC,
    coordinate_wavefunction,
    correlation_curve,
    singlet,
)
from .harmonics import (
    AnglePair,
    CoverConvention,
    alpha,
    beta,
    density,
    eval_harmonic,
    harmonic_values,
)
from .operators import (
    DEFAULT_FD_STEP,
    alpha_field,
    beta_field,
    eigen_residual,
    ladder_defect,
    operator_field,
    superposition,
)
from .pauli import (
    Spinor2,
    expectation,
    project_to_spinor,
    spin_squared,
    spin_z,
)
from .quadrature import (
    QuadratureSpec,
    four_angle_inner_product,
    full_inner_product,
    phi_inner_product,
)

__all__ = ["main", "run", "RunConfig", "EPR_AGREEMENT_TOL"]

# The two correlation channels must agree at least this well for the epr
# subcommand to exit 0.
EPR_AGREEMENT_TOL = 1e-6


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by every subcommand."""

    cover: CoverConvention = CoverConvention.SINGLE
    n_theta: Optional[int] = None
    n_phi: Optional[int] = None
    fd_step: float = DEFAULT_FD_STEP
    out_format: str = "csv"
    out_path: Optional[str] = None
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.fd_step) and self.fd_step > 0.0):
            raise ValueError(f"fd-step must be positive and finite, got {self.fd_step!r}")
        if self.out_format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.out_format!r}")

    def sphere_spec(self) -> QuadratureSpec:
        """Single-electron quadrature grid."""
        return QuadratureSpec(
            n_theta=self.n_theta if self.n_theta is not None else 64,
            n_phi=self.n_phi if self.n_phi is not None else 64,
            cover=self.cover,
        )

    def pair_spec(self) -> QuadratureSpec:
        """Four-angle quadrature grid; coarser default, cost is squared."""
        return QuadratureSpec(
            n_theta=self.n_theta if self.n_theta is not None else EPR_QUADRATURE_SPEC.n_theta,
            n_phi=self.n_phi if self.n_phi is not None else EPR_QUADRATURE_SPEC.n_phi,
            cover=self.cover,
        )


def format_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.15f} {sign} {abs(z.imag):.15f}i"


def _f17(x: float) -> str:
    return f"{x:.17g}"


# ---------------------------------------------------------------- verify


def _sign_flip_deviation(spec: QuadratureSpec) -> float:
    tg = np.linspace(1e-3, math.pi - 1e-3, 101)[:, None]
    pg = np.linspace(0.0, spec.period, 101, endpoint=False)[None, :]
    worst = 0.0
    for h in (alpha(spec.cover), beta(spec.cover)):
        v = harmonic_values(h, tg, pg)
        v_turn = harmonic_values(h, tg, pg + 2.0 * math.pi)
        worst = max(worst, float(np.max(np.abs(v_turn + v) / np.abs(v))))
    return worst


def _density_shift_deviation(spec: QuadratureSpec) -> float:
    tg = np.linspace(1e-3, math.pi - 1e-3, 101)[:, None]
    pg = np.linspace(0.0, spec.period, 101, endpoint=False)[None, :]
    worst = 0.0
    for h in (alpha(spec.cover), beta(spec.cover)):
        d = np.abs(harmonic_values(h, tg, pg)) ** 2
        d_turn = np.abs(harmonic_values(h, tg, pg + 2.0 * math.pi)) ** 2
        worst = max(worst, float(np.max(np.abs(d_turn - d))))
    return worst


def _eigen_deviation(tag: str, f, lam: float, spec: QuadratureSpec, fd_step: float) -> float:
    r = eigen_residual(tag, f, lam, spec, fd_step)
    return max(r.rayleigh_deviation, r.max_pointwise_residual)


def _fd_channel_deviation(spec: QuadratureSpec, fd_step: float) -> float:
    # Pointwise residuals only: the Rayleigh quotient runs on the full
    # Gauss-Legendre grid, where a large step can push stencils past a
    # pole, and that says nothing about the finite difference quality.
    worst = 0.0
    for f, lam_s2, lam_sz in (
        (alpha_field(spec.cover), 0.75, 0.5),
        (beta_field(spec.cover), 0.75, -0.5),
    ):
        bare = f.value_only()
        worst = max(
            worst,
            eigen_residual("S2", bare, lam_s2, spec, fd_step).max_pointwise_residual,
            eigen_residual("Sz", bare, lam_sz, spec, fd_step).max_pointwise_residual,
        )
    return worst


def _norm_deviation(which: str, cover: CoverConvention, cfg: RunConfig) -> float:
    spec = QuadratureSpec(
        n_theta=cfg.n_theta if cfg.n_theta is not None else 64,
        n_phi=cfg.n_phi if cfg.n_phi is not None else 64,
        cover=cover,
    )
    f = alpha_field(cover) if which == "alpha" else beta_field(cover)
    return abs(full_inner_product(f, f, spec).real - 1.0)


def _ortho_phi_deviation(spec: QuadratureSpec) -> float:
    thetas = np.linspace(0.0, math.pi, 35)[1:-1]
    af = alpha_field(spec.cover)
    bf = beta_field(spec.cover)
    return max(abs(phi_inner_product(af, bf, float(t), spec)) for t in thetas)


def _equivalence_deviations(cfg: RunConfig, spec: QuadratureSpec) -> tuple[float, float]:
    """(roundtrip, expectation gap) over 100 seeded random spinors."""
    rng = np.random.default_rng(cfg.seed)
    s2m, szm = spin_squared(), spin_z()
    worst_rt = 0.0
    worst_gap = 0.0
    for _ in range(100):
        raw = rng.standard_normal(4)
        s = Spinor2(raw[0] + 1j * raw[1], raw[2] + 1j * raw[3]).normalized()
        f = superposition(s.c_alpha, s.c_beta, spec.cover)
        back = project_to_spinor(f, spec)
        worst_rt = max(
            worst_rt,
            abs(back.c_alpha - s.c_alpha),
            abs(back.c_beta - s.c_beta),
        )
        for tag, m in (("S2", s2m), ("Sz", szm)):
            e_quad = full_inner_product(f, operator_field(tag, f), spec).real
            worst_gap = max(worst_gap, abs(e_quad - expectation(s, m)))
    return worst_rt, worst_gap


def _singlet_norm_deviation(cfg: RunConfig) -> float:
    spec = cfg.pair_spec()
    psi = coordinate_wavefunction(singlet(), spec.cover)
    return abs(four_angle_inner_product(psi, psi, spec).real - 1.0)


def _verify_rows(cfg: RunConfig) -> list[tuple[str, float, float]]:
    spec = cfg.sphere_spec()
    af, bf = alpha_field(spec.cover), beta_field(spec.cover)
    rows = [
        ("harmonic_sign_flip", _sign_flip_deviation(spec), 1e-14),
        ("density_single_valued", _density_shift_deviation(spec), 1e-15),
        ("eigen_s2_alpha", _eigen_deviation("S2", af, 0.75, spec, cfg.fd_step), 1e-10),
        ("eigen_s2_beta", _eigen_deviation("S2", bf, 0.75, spec, cfg.fd_step), 1e-10),
        ("eigen_sz_alpha", _eigen_deviation("Sz", af, 0.5, spec, cfg.fd_step), 1e-10),
        ("eigen_sz_beta", _eigen_deviation("Sz", bf, -0.5, spec, cfg.fd_step), 1e-10),
        ("fd_vs_analytic", _fd_channel_deviation(spec, cfg.fd_step), 1e-6),
        ("norm_alpha_single", _norm_deviation("alpha", CoverConvention.SINGLE, cfg), 1e-12),
        ("norm_beta_single", _norm_deviation("beta", CoverConvention.SINGLE, cfg), 1e-12),
        ("norm_alpha_double", _norm_deviation("alpha", CoverConvention.DOUBLE, cfg), 1e-12),
        ("norm_beta_double", _norm_deviation("beta", CoverConvention.DOUBLE, cfg), 1e-12),
        ("ortho_phi", _ortho_phi_deviation(spec), 1e-14),
        ("ortho_full_2d", abs(full_inner_product(af, bf, spec)), 1e-14),
    ]
    rt, gap = _equivalence_deviations(cfg, spec)
    rows.append(("pauli_roundtrip", rt, 1e-10))
    rows.append(("pauli_expectation_gap", gap, 1e-8))
    report = ladder_defect(spec)
    rows.append(("ladder_norm", abs(report.norm_of_raised_beta - 1.0), 1e-8))
    rows.append(("ladder_overlap", abs(report.overlap_with_alpha), 1e-8))
    rows.append(
        ("ladder_defect_norm", abs(report.defect_norm - math.sqrt(2.0)), 1e-8)
    )
    rows.append(("singlet_norm", _singlet_norm_deviation(cfg), 1e-10))
    return rows


def cmd_verify(cfg: RunConfig) -> int:
    rows = _verify_rows(cfg)
    width = max(len(name) for name, _, _ in rows)
    print(f"{'check':<{width}}  {'value':>10}  {'tolerance':>10}  status")
    failures = 0
    for name, value, tol in rows:
        ok = value <= tol
        failures += 0 if ok else 1
        print(
            f"{name:<{width}}  {value:>10.3e}  {tol:>10.1e}  "
            f"{'PASS' if ok else 'FAIL'}"
        )
    print(f"result: {len(rows) - failures}/{len(rows)} checks passed")
    return 0 if failures == 0 else 1


# ------------------------------------------------------------ eval / ip


def cmd_eval(cfg: RunConfig, which: str, theta: float, phi: float) -> int:
    h = alpha(cfg.cover) if which == "alpha" else beta(cfg.cover)
    point = AnglePair(theta, phi)
    print(f"{which}(theta={theta:.15g}, phi={phi:.15g}, cover={cfg.cover.value})")
    print(f"value   = {format_complex(eval_harmonic(h, point))}")
    print(f"density = {density(h, point):.15f}")
    return 0


def cmd_ip(cfg: RunConfig, kind: str, left: str, right: str, theta: Optional[float]) -> int:
    spec = cfg.sphere_spec()
    fields = {"alpha": alpha_field(cfg.cover), "beta": beta_field(cfg.cover)}
    f, g = fields[left], fields[right]
    if kind == "full":
        value = full_inner_product(f, g, spec)
        print(f"<{left}|{right}> = {format_complex(value)}")
    else:
        if theta is None:
            raise ValueError("ip phi needs --theta")
        value = phi_inner_product(f, g, theta, spec)
        print(f"<{left}|{right}>_phi(theta={theta:.15g}) = {format_complex(value)}")
    return 0


# ------------------------------------------------------------------ epr


def _epr_payload(cfg: RunConfig, n_points: int) -> tuple[str, float]:
    points = correlation_curve(singlet(), n_points, cfg.pair_spec())
    worst = max(p.abs_difference for p in points)
    if cfg.out_format == "csv":
        lines = ["angle,e_oracle,e_quadrature,abs_diff"]
        lines += [
            f"{_f17(p.angle_between_detectors)},{_f17(p.e_oracle)},"
            f"{_f17(p.e_quadrature)},{_f17(p.abs_difference)}"
            for p in points
        ]
        return "\n".join(lines) + "\n", worst
    payload = {
        "config": {
            "cover": cfg.cover.value,
            "n_theta": cfg.pair_spec().n_theta,
            "n_phi": cfg.pair_spec().n_phi,
            "fd_step": cfg.fd_step,
            "seed": cfg.seed,
            "n_points": n_points,
        },
        "points": [
            {
                "angle": p.angle_between_detectors,
                "e_oracle": p.e_oracle,
                "e_quadrature": p.e_quadrature,
                "abs_diff": p.abs_difference,
            }
            for p in points
        ],
    }
    return json.dumps(payload, indent=2) + "\n", worst


def cmd_epr(cfg: RunConfig, n_points: int) -> int:
    if n_points < 2:
        raise ValueError(f"n-points must be at least 2, got {n_points}")
    text, worst = _epr_payload(cfg, n_points)
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if worst > EPR_AGREEMENT_TOL:
        print(
            f"channel disagreement {worst:.3e} exceeds {EPR_AGREEMENT_TOL:.1e}",
            file=sys.stderr,
        )
        return 1
    return 0


# --------------------------------------------------------- ladder probe


def cmd_ladder_probe(cfg: RunConfig) -> int:
    spec = cfg.sphere_spec()
    report = ladder_defect(spec)
    rows = [
        ("norm_of_raised_beta", report.norm_of_raised_beta, 1.0, "1"),
        ("overlap_with_alpha", abs(report.overlap_with_alpha), 0.0, "0"),
        ("defect_norm", report.defect_norm, math.sqrt(2.0), "sqrt(2)"),
    ]
    print(
        f"ladder probe (cover={spec.cover.value}, "
        f"n_theta={spec.n_theta}, n_phi={spec.n_phi})"
    )
    failures = 0
    for name, measured, ref, ref_label in rows:
        dev = abs(measured - ref)
        ok = dev <= 1e-8
        failures += 0 if ok else 1
        print(
            f"{name:<20} measured={measured:.15f}  reference={ref_label:<7} "
            f"|dev|={dev:.3e}  {'PASS' if ok else 'FAIL'}"
        )
    print(
        "raising the spin-down function yields a unit-norm function with no\n"
        "overlap on spin-up, so detector rotations in the correlation module\n"
        "act on basis coefficients rather than through transverse\n"
        "differential operators."
    )
    return 0 if failures == 0 else 1


# ----------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cover",
        choices=("single", "double"),
        default="single",
        help="phi period convention: single (2 pi) or double (4 pi)",
    )
    common.add_argument(
        "--n-theta", type=int, default=None, help="polar quadrature nodes"
    )
    common.add_argument(
        "--n-phi", type=int, default=None, help="azimuthal quadrature nodes (even)"
    )
    common.add_argument(
        "--fd-step",
        type=float,
        default=DEFAULT_FD_STEP,
        help="central difference step for the numerical derivative channel",
    )
    common.add_argument(
        "--format",
        dest="out_format",
        choices=("csv", "json"),
        default="csv",
        help="output encoding for data-producing commands",
    )
    common.add_argument("--out", dest="out_path", default=None, help="output file path")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(
        prog="spinharm",
        description="half-integer spherical harmonics, their operators, and "
        "EPR correlation checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", parents=[common], help="run the consistency check table")

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate a harmonic")
    p_eval.add_argument("which", choices=("alpha", "beta"))
    p_eval.add_argument("theta", type=float)
    p_eval.add_argument("phi", type=float)

    p_ip = sub.add_parser("ip", parents=[common], help="inner products")
    p_ip.add_argument("kind", choices=("full", "phi"))
    p_ip.add_argument("left", choices=("alpha", "beta"))
    p_ip.add_argument("right", choices=("alpha", "beta"))
    p_ip.add_argument("--theta", type=float, default=None, help="fixed theta for kind=phi")

    p_epr = sub.add_parser("epr", parents=[common], help="two-channel correlation sweep")
    p_epr.add_argument("--n-points", type=int, default=33, help="sweep resolution")

    sub.add_parser(
        "ladder-probe", parents=[common], help="raising-defect report"
    )

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            cover=CoverConvention(args.cover),
            n_theta=args.n_theta,
            n_phi=args.n_phi,
            fd_step=args.fd_step,
            out_format=args.out_format,
            out_path=args.out_path,
            seed=args.seed,
        )
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "eval":
            return cmd_eval(cfg, args.which, args.theta, args.phi)
        if args.command == "ip":
            return cmd_ip(cfg, args.kind, args.left, args.right, args.theta)
        if args.command == "epr":
            return cmd_epr(cfg, args.n_points)
        if args.command == "ladder-probe":
            return cmd_ladder_probe(cfg)
        raise AssertionError(f"unhandled command {args.command!r}")
    except ValueError as exc:
        # AngleDomainError and bad QuadratureSpec parameters land here too.
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
