import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinharm import (
    ALPHA_SPINOR,
    BETA_SPINOR,
    AngleDomainError,
    CoverConvention,
    Direction,
    QuadratureSpec,
    SpinMatrix,
    Spinor2,
    abstract_eigencheck,
    antipode,
    bloch_state,
    expectation,
    orthonormality_check,
    project_to_spinor,
    spin_along,
    spin_squared,
    spin_x,
    spin_y,
    spin_z,
    spinor_dot,
    superposition,
)
from spinharm.pauli import BETA_COMPONENT_SIGN, direction_to_unit, unit_to_direction

axis_theta = st.floats(min_value=0.0, max_value=math.pi)
axis_phi = st.floats(min_value=0.0, max_value=2.0 * math.pi, exclude_max=True)


class TestMatrixAlgebra:
    def test_components_are_hermitian_and_exact(self):
        assert spin_x().entries == ((0.0, 0.5), (0.5, 0.0))
        assert spin_y().entries == ((0.0, -0.5j), (0.5j, 0.0))
        assert spin_z().entries == ((0.5, 0.0), (0.0, -0.5))
        assert spin_squared().entries == ((0.75, 0.0), (0.0, 0.75))

    @pytest.mark.parametrize(
        "a,b,c",
        [(spin_x, spin_y, spin_z), (spin_y, spin_z, spin_x), (spin_z, spin_x, spin_y)],
    )
    def test_cyclic_commutators(self, a, b, c):
        ma, mb, mc = a().as_array(), b().as_array(), c().as_array()
        assert np.array_equal(ma @ mb - mb @ ma, 1j * mc)

    def test_sum_of_squares(self):
        total = sum(
            m.as_array() @ m.as_array() for m in (spin_x(), spin_y(), spin_z())
        )
        assert np.array_equal(total, spin_squared().as_array())

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="Hermitian"):
            SpinMatrix(((0.0, 1.0), (0.0, 0.0)), tag="raiser")

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            SpinMatrix(((math.nan, 0.0), (0.0, 0.0)))

    @given(theta=axis_theta, phi=axis_phi)
    def test_axis_matrix_is_component_sum(self, theta, phi):
        d = Direction(theta, phi)
        n = direction_to_unit(d)
        combo = (
            n[0] * spin_x().as_array()
            + n[1] * spin_y().as_array()
            + n[2] * spin_z().as_array()
        )
        assert np.max(np.abs(spin_along(d).as_array() - combo)) <= 1e-15

    def test_polar_axis_recovers_sz(self):
        assert np.max(
            np.abs(spin_along(Direction(0.0, 0.0)).as_array() - spin_z().as_array())
        ) == 0.0
        assert np.max(
            np.abs(
                spin_along(Direction(math.pi / 2, 0.0)).as_array()
                - spin_x().as_array()
            )
        ) <= 1e-16


class TestSpinors:
    def test_basis_spinors(self):
        assert ALPHA_SPINOR.c_alpha == 1.0 and ALPHA_SPINOR.c_beta == 0.0
        assert BETA_SPINOR.c_beta == BETA_COMPONENT_SIGN
        assert ALPHA_SPINOR.is_normalized and BETA_SPINOR.is_normalized

    def test_norm_and_normalization(self):
        s = Spinor2(3.0, 4.0j)
        assert s.norm() == 5.0
        assert s.normalized().is_normalized
        with pytest.raises(ValueError):
            Spinor2(0.0, 0.0).normalized()

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Spinor2(math.nan, 0.0)
        with pytest.raises(ValueError):
            Spinor2(0.0, complex(0.0, math.inf))

    def test_dot_is_sesquilinear(self):
        a = Spinor2(0.6, 0.8j)
        assert spinor_dot(a, a).real == pytest.approx(1.0, abs=1e-15)
        scaled = Spinor2(2j * a.c_alpha, 2j * a.c_beta)
        assert spinor_dot(scaled, a) == pytest.approx(
            -2j * spinor_dot(a, a), abs=1e-15
        )


class TestEigenchecks:
    def test_alpha(self):
        rep = abstract_eigencheck(ALPHA_SPINOR)
        assert rep.s2_eigenvalue == 0.75
        assert rep.sz_eigenvalue == 0.5
        assert rep.max_residual == 0.0

    def test_beta(self):
        rep = abstract_eigencheck(BETA_SPINOR)
        assert rep.s2_eigenvalue == 0.75
        assert rep.sz_eigenvalue == -0.5
        assert rep.max_residual == 0.0

    def test_superposition_rejected(self):
        r = 1.0 / math.sqrt(2.0)
        with pytest.raises(ValueError, match="basis spinor"):
            abstract_eigencheck(Spinor2(r, r))

    def test_opposite_sign_convention_rejected(self):
        # with BETA_COMPONENT_SIGN = +1 the (0, -1) vector is not canonical
        with pytest.raises(ValueError):
            abstract_eigencheck(Spinor2(0.0, -BETA_COMPONENT_SIGN))

    def test_orthonormality(self):
        rep = orthonormality_check()
        assert rep.alpha_alpha == 1.0
        assert rep.beta_beta == 1.0
        assert rep.alpha_beta == 0.0
        assert rep.beta_alpha == 0.0
        assert rep.max_deviation == 0.0


class TestDirections:
    @pytest.mark.parametrize("theta", [-0.1, 3.5, math.nan])
    def test_bad_theta_rejected(self, theta):
        with pytest.raises(AngleDomainError):
            Direction(theta, 0.0)

    @given(theta=st.floats(min_value=0.05, max_value=math.pi - 0.05), phi=axis_phi)
    def test_unit_vector_roundtrip(self, theta, phi):
        d = Direction(theta, phi)
        back = unit_to_direction(direction_to_unit(d))
        assert abs(back.theta - theta) <= 1e-12
        dphi = (back.phi - phi + math.pi) % (2.0 * math.pi) - math.pi
        assert abs(dphi) <= 1e-9

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            unit_to_direction([0.0, 0.0, 0.0])

    @given(theta=axis_theta, phi=axis_phi)
    def test_antipode_flips_axis_matrix(self, theta, phi):
        d = Direction(theta, phi)
        flipped = spin_along(antipode(d)).as_array() + spin_along(d).as_array()
        assert np.max(np.abs(flipped)) <= 1e-15


class TestBlochStates:
    def test_poles(self):
        up = bloch_state(Direction(0.0, 0.0))
        assert (up.c_alpha, up.c_beta) == (1.0, 0.0)
        down = bloch_state(Direction(math.pi, 0.0))
        assert abs(down.c_alpha) <= 1e-16
        assert abs(down.c_beta - 1.0) <= 1e-15

    def test_equator(self):
        s = bloch_state(Direction(math.pi / 2, 0.0))
        r = 1.0 / math.sqrt(2.0)
        assert abs(s.c_alpha - r) <= 1e-15 and abs(s.c_beta - r) <= 1e-15
        assert expectation(s, spin_x()) == pytest.approx(0.5, abs=1e-15)
        assert expectation(s, spin_z()) == pytest.approx(0.0, abs=1e-15)

    @given(theta=axis_theta, phi=axis_phi)
    def test_eigenvector_of_its_axis(self, theta, phi):
        d = Direction(theta, phi)
        v = bloch_state(d).as_array()
        assert np.max(np.abs(spin_along(d).as_array() @ v - 0.5 * v)) <= 1e-15

    @given(theta=axis_theta, phi=axis_phi)
    def test_antipodal_states_are_orthogonal(self, theta, phi):
        d = Direction(theta, phi)
        assert abs(spinor_dot(bloch_state(d), bloch_state(antipode(d)))) <= 1e-15

    @given(theta=axis_theta, phi=axis_phi)
    def test_polarization_along_axis(self, theta, phi):
        d = Direction(theta, phi)
        s = bloch_state(d)
        assert expectation(s, spin_along(d)) == pytest.approx(0.5, abs=1e-14)
        assert expectation(s, spin_z()) == pytest.approx(
            0.5 * math.cos(theta), abs=1e-14
        )


class TestExpectations:
    def test_reference_values(self):
        assert expectation(ALPHA_SPINOR, spin_squared()) == 0.75
        assert expectation(BETA_SPINOR, spin_z()) == -0.5
        assert expectation(ALPHA_SPINOR, spin_x()) == 0.0

    def test_requires_normalized_state(self):
        with pytest.raises(ValueError, match="normalized"):
            expectation(Spinor2(1.0, 1.0), spin_z())


class TestProjection:
    def test_basis_fields_roundtrip(self):
        got = project_to_spinor(superposition(1.0, 0.0))
        assert abs(got.c_alpha - 1.0) <= 1e-12 and abs(got.c_beta) <= 1e-12

    def test_superposition_roundtrip(self):
        s = Spinor2(0.6, 0.8j)
        got = project_to_spinor(superposition(s.c_alpha, s.c_beta))
        assert abs(got.c_alpha - s.c_alpha) <= 1e-12
        assert abs(got.c_beta - s.c_beta) <= 1e-12

    def test_double_cover_roundtrip(self):
        spec = QuadratureSpec(64, 64, CoverConvention.DOUBLE)
        s = Spinor2(0.48 - 0.6j, 0.64j)
        f = superposition(s.c_alpha, s.c_beta, CoverConvention.DOUBLE)
        got = project_to_spinor(f, spec)
        assert abs(got.c_alpha - s.c_alpha) <= 1e-12
        assert abs(got.c_beta - s.c_beta) <= 1e-12

    def test_content_outside_spin_space_is_dropped(self):
        def mode_three_halves(th, ph):
            return np.sqrt(np.sin(th)) / math.pi * np.exp(1.5j * ph)

        got = project_to_spinor(mode_three_halves)
        assert abs(got.c_alpha) <= 1e-12 and abs(got.c_beta) <= 1e-12

    def test_representation_equivalence_sample(self):
        rng = np.random.default_rng(99)
        for _ in range(10):
            raw = rng.standard_normal(4)
            s = Spinor2(raw[0] + 1j * raw[1], raw[2] + 1j * raw[3]).normalized()
            f = superposition(s.c_alpha, s.c_beta)
            back = project_to_spinor(f)
            assert abs(back.c_alpha - s.c_alpha) <= 1e-10
            assert abs(back.c_beta - s.c_beta) <= 1e-10
