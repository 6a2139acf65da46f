import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinharm import (
    AnglePair,
    CoverConvention,
    PoleProximityError,
    QuadratureSpec,
    SpinorField,
    alpha_field,
    apply_S2,
    apply_Sminus,
    apply_Splus,
    apply_Sz,
    beta_field,
    eigen_residual,
    eval_harmonic,
    full_inner_product,
    harmonic_values,
    ladder_defect,
    operator_field,
    superposition,
    verify_analytic_partials,
)
from spinharm import alpha as alpha_harmonic
from spinharm import beta as beta_harmonic
from spinharm.operators import RESIDUAL_GRID_MARGIN, residual_grid

SQRT2 = 1.4142135623730950488

small_complex = st.complex_numbers(
    max_magnitude=2.0, allow_nan=False, allow_infinity=False
)

POINTS = [
    AnglePair(math.pi / 3, 1.0),
    AnglePair(math.pi / 2, 0.0),
    AnglePair(2.2, 4.0),
    AnglePair(0.4, -1.5),
]


def _raised_beta_closed_form(theta: float, phi: float) -> complex:
    # cos(theta) / sqrt(sin(theta)) carrying the +phi/2 phase
    return (
        (1.0 / math.pi)
        * math.cos(theta)
        / math.sqrt(math.sin(theta))
        * cmath.exp(0.5j * phi)
    )


class TestEigenRelations:
    @pytest.mark.parametrize("point", POINTS)
    @pytest.mark.parametrize(
        "which,sz",
        [("alpha", 0.5), ("beta", -0.5)],
    )
    def test_analytic_channel_pointwise(self, which, sz, point):
        f = alpha_field() if which == "alpha" else beta_field()
        h = alpha_harmonic() if which == "alpha" else beta_harmonic()
        v = eval_harmonic(h, point)
        assert abs(apply_S2(f, point) - 0.75 * v) <= 1e-12
        assert abs(apply_Sz(f, point) - sz * v) <= 1e-12

    def test_double_cover_same_eigenvalues(self):
        f = beta_field(CoverConvention.DOUBLE)
        h = beta_harmonic(CoverConvention.DOUBLE)
        p = AnglePair(1.1, 2.0)
        v = eval_harmonic(h, p)
        assert abs(apply_S2(f, p) - 0.75 * v) <= 1e-12
        assert abs(apply_Sz(f, p) + 0.5 * v) <= 1e-12

    def test_fd_channel_pointwise(self):
        f = alpha_field().value_only()
        h = alpha_harmonic()
        p = AnglePair(math.pi / 3, 1.0)
        v = eval_harmonic(h, p)
        assert abs(apply_S2(f, p) - 0.75 * v) <= 1e-7
        assert abs(apply_Sz(f, p) - 0.5 * v) <= 1e-9

    def test_constant_field_is_annihilated(self):
        const = SpinorField(value=lambda th, ph: th * 0.0 + ph * 0.0 + 1.0 + 0j)
        p = AnglePair(math.pi / 2, 0.0)
        assert abs(apply_S2(const, p)) <= 1e-10
        assert abs(apply_Sz(const, p)) <= 1e-12

    @given(a=small_complex, b=small_complex)
    @settings(max_examples=40)
    def test_linearity(self, a, b):
        p = AnglePair(1.2, 0.7)
        combined = superposition(a, b)
        lhs = apply_S2(combined, p)
        rhs = a * apply_S2(alpha_field(), p) + b * apply_S2(beta_field(), p)
        assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(a) + abs(b))

    def test_phase_mode_shifts_sz(self):
        # sqrt(sin) profile with a 3/2 phase winding: Sz should read 1.5
        n = 1.0 / math.pi
        m = 1.5

        def value(th, ph):
            return n * np.sqrt(np.sin(th)) * np.exp(1j * m * ph)

        f = SpinorField(
            value=value,
            dphi=lambda th, ph: 1j * m * value(th, ph),
            label="mode 3/2",
        )
        p = AnglePair(0.9, 2.5)
        assert abs(apply_Sz(f, p) - 1.5 * complex(value(p.theta, p.phi))) <= 1e-12


class TestPoleHandling:
    @pytest.mark.parametrize("theta", [0.0, 5e-7, math.pi - 5e-7, math.pi])
    def test_analytic_guard(self, theta):
        with pytest.raises(PoleProximityError):
            apply_S2(alpha_field(), AnglePair(theta, 0.0))

    def test_fd_needs_stencil_room(self):
        # fine for the analytic channel, too close for a 1e-4 stencil
        p = AnglePair(5e-5, 0.0)
        apply_S2(alpha_field(), p)
        with pytest.raises(PoleProximityError):
            apply_S2(alpha_field().value_only(), p)

    @pytest.mark.parametrize("step", [0.0, -1e-4, math.nan, math.inf])
    def test_bad_fd_step_rejected(self, step):
        with pytest.raises(ValueError):
            apply_S2(alpha_field(), AnglePair(1.0, 0.0), fd_step=step)


class TestLadders:
    @pytest.mark.parametrize("point", POINTS)
    def test_raising_beta_closed_form(self, point):
        got = apply_Splus(beta_field(), point)
        want = _raised_beta_closed_form(point.theta, point.phi)
        assert abs(got - want) <= 1e-12

    def test_raising_beta_fd_channel(self):
        p = AnglePair(1.0, 0.5)
        got = apply_Splus(beta_field().value_only(), p)
        assert abs(got - _raised_beta_closed_form(1.0, 0.5)) <= 1e-7

    @pytest.mark.parametrize("point", POINTS)
    def test_alpha_is_annihilated_by_raising(self, point):
        assert abs(apply_Splus(alpha_field(), point)) <= 1e-12

    @pytest.mark.parametrize("point", POINTS)
    def test_beta_is_annihilated_by_lowering(self, point):
        assert abs(apply_Sminus(beta_field(), point)) <= 1e-12

    @pytest.mark.parametrize("point", POINTS)
    def test_lowering_alpha_closed_form(self, point):
        got = apply_Sminus(alpha_field(), point)
        want = -(
            (1.0 / math.pi)
            * math.cos(point.theta)
            / math.sqrt(math.sin(point.theta))
            * cmath.exp(-0.5j * point.phi)
        )
        assert abs(got - want) <= 1e-12


class TestEigenResidualReport:
    @pytest.mark.parametrize(
        "tag,which,lam",
        [
            ("S2", "alpha", 0.75),
            ("S2", "beta", 0.75),
            ("Sz", "alpha", 0.5),
            ("Sz", "beta", -0.5),
        ],
    )
    def test_analytic_channel(self, tag, which, lam):
        f = alpha_field() if which == "alpha" else beta_field()
        r = eigen_residual(tag, f, lam)
        assert not r.fd_channel
        assert r.rayleigh_deviation <= 1e-12
        assert r.max_pointwise_residual <= 1e-10
        assert abs(r.rayleigh_quotient.imag) <= 1e-12

    @pytest.mark.parametrize(
        "tag,which,lam",
        [
            ("S2", "alpha", 0.75),
            ("S2", "beta", 0.75),
            ("Sz", "alpha", 0.5),
            ("Sz", "beta", -0.5),
        ],
    )
    def test_fd_channel(self, tag, which, lam):
        f = alpha_field() if which == "alpha" else beta_field()
        r = eigen_residual(tag, f.value_only(), lam)
        assert r.fd_channel
        assert r.rayleigh_deviation <= 1e-6
        assert r.max_pointwise_residual <= 1e-6

    def test_wrong_eigenvalue_is_visible(self):
        r = eigen_residual("S2", alpha_field(), 0.70)
        # residual scales like |0.75 - 0.70| * max |alpha| on the scan grid
        assert 0.01 <= r.max_pointwise_residual <= 0.02
        assert abs(r.rayleigh_quotient - 0.75) <= 1e-10
        assert abs(r.rayleigh_deviation - 0.05) <= 1e-10

    def test_unknown_tag_rejected(self):
        with pytest.raises(ValueError, match="operator tag"):
            eigen_residual("Sx", alpha_field(), 0.5)

    def test_residual_grid_is_inset(self):
        tg, pg = residual_grid(QuadratureSpec(16, 8))
        assert tg[0] == pytest.approx(RESIDUAL_GRID_MARGIN)
        assert tg[-1] == pytest.approx(math.pi - RESIDUAL_GRID_MARGIN)
        assert tg.size == 16 and pg.size == 8

    def test_fd_agreement_on_random_interior_points(self):
        rng = np.random.default_rng(2024)
        th = rng.uniform(0.2, math.pi - 0.2, size=1000)
        ph = rng.uniform(0.0, 2.0 * math.pi, size=1000)
        bare = alpha_field().value_only()
        ref = harmonic_values(alpha_harmonic(), th, ph)
        s2 = operator_field("S2", bare).value(th, ph)
        sz = operator_field("Sz", bare).value(th, ph)
        assert float(np.max(np.abs(s2 - 0.75 * ref))) <= 1e-6
        assert float(np.max(np.abs(sz - 0.5 * ref))) <= 1e-8


class TestHermiticity:
    @pytest.mark.parametrize("tag", ["S2", "Sz"])
    def test_inner_product_symmetry(self, tag):
        fields = [
            alpha_field(),
            beta_field(),
            superposition(1.0 / SQRT2, 1j / SQRT2),
        ]
        for f in fields:
            for g in fields:
                lhs = full_inner_product(f, operator_field(tag, g))
                rhs = full_inner_product(operator_field(tag, f), g)
                assert abs(lhs - rhs) <= 1e-10


class TestOperatorField:
    def test_unknown_tag_rejected(self):
        with pytest.raises(ValueError, match="operator tag"):
            operator_field("Sy", alpha_field())

    def test_label_composition(self):
        assert operator_field("Splus", beta_field()).label == "Splus beta"

    def test_matches_scalar_application(self):
        f = operator_field("S2", beta_field())
        p = AnglePair(1.3, 2.0)
        assert complex(f.value(p.theta, p.phi)) == apply_S2(beta_field(), p)


class TestLadderDefect:
    def test_reference_values(self):
        rep = ladder_defect()
        assert abs(rep.norm_of_raised_beta - 1.0) <= 1e-10
        assert abs(rep.overlap_with_alpha) <= 1e-12
        assert abs(rep.defect_norm - SQRT2) <= 1e-10

    def test_stable_under_grid_refinement(self):
        coarse = ladder_defect(QuadratureSpec(64, 64))
        fine = ladder_defect(QuadratureSpec(128, 128))
        assert abs(coarse.norm_of_raised_beta - fine.norm_of_raised_beta) <= 1e-9
        assert abs(coarse.defect_norm - fine.defect_norm) <= 1e-9

    def test_cover_independent(self):
        single = ladder_defect(QuadratureSpec(64, 64))
        double = ladder_defect(QuadratureSpec(64, 64, CoverConvention.DOUBLE))
        assert abs(single.norm_of_raised_beta - double.norm_of_raised_beta) <= 1e-12
        assert abs(single.defect_norm - double.defect_norm) <= 1e-12


class TestPartialVerification:
    def test_basis_fields_pass(self, interior_points):
        for f in (alpha_field(), beta_field(), superposition(0.3 + 0.4j, -0.5)):
            report = verify_analytic_partials(f, interior_points)
            assert set(report) == {"dtheta", "dtheta2", "dphi", "dphi2"}
            assert max(report.values()) <= 1e-7

    def test_needs_partials(self, interior_points):
        with pytest.raises(ValueError, match="no analytic partials"):
            verify_analytic_partials(alpha_field().value_only(), interior_points)

    def test_needs_points(self):
        with pytest.raises(ValueError, match="at least one"):
            verify_analytic_partials(alpha_field(), [])

    def test_flags_a_wrong_partial(self, interior_points):
        f = alpha_field()
        lying = SpinorField(
            value=f.value,
            dtheta=lambda th, ph: 1.02 * f.dtheta(th, ph),
            dphi=f.dphi,
            label="wrong dtheta",
        )
        report = verify_analytic_partials(lying, interior_points)
        assert report["dtheta"] > 1e-3
        assert report["dphi"] <= 1e-7
