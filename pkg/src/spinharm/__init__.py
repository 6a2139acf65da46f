"""Angle-coordinate spin-1/2: harmonics, operators, and EPR correlations.

The package keeps two fully independent representations of the same
physics side by side.  The coordinate side builds everything from the
half-integer spherical harmonics and differential operators; the matrix
side is plain Pauli algebra.  Their agreement, checked by quadrature, is
the point.
"""

from .harmonics import (
    AngleDomainError,
    AnglePair,
    CoverConvention,
    SpinHarmonic,
    alpha,
    beta,
    cover_sign,
    density,
    eval_harmonic,
    harmonic_values,
)
from .operators import (
    DEFAULT_FD_STEP,
    POLE_GUARD,
    RESIDUAL_GRID_MARGIN,
    LadderDefectReport,
    OperatorResidual,
    PoleProximityError,
    SpinorField,
    alpha_field,
    apply_S2,
    apply_Sminus,
    apply_Splus,
    apply_Sz,
    beta_field,
    eigen_residual,
    ladder_defect,
    operator_field,
    superposition,
    verify_analytic_partials,
)
from .quadrature import (
    DEFAULT_SPEC,
    FOUR_ANGLE_DEFAULT_SPEC,
    NonFiniteIntegrandError,
    QuadratureSpec,
    four_angle_inner_product,
    full_inner_product,
    phi_inner_product,
)
from .pauli import (
    ALPHA_SPINOR,
    BETA_SPINOR,
    Direction,
    EigencheckReport,
    SpinMatrix,
    Spinor2,
    abstract_eigencheck,
    antipode,
    bloch_state,
    direction_to_unit,
    expectation,
    orthonormality_check,
    project_to_spinor,
    spin_along,
    spin_squared,
    spin_x,
    spin_y,
    spin_z,
    spinor_dot,
    unit_to_direction,
)
from .entangle import (
    EPR_QUADRATURE_SPEC,
    CorrelationPoint,
    TransverseChannelWarning,
    TwoElectronSpinState,
    chsh_value,
    coordinate_wavefunction,
    correlation_curve,
    epr_correlation,
    product_state,
    singlet,
)

__version__ = "0.1.0"
