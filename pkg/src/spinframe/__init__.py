"""Aligning Cartesian frames with n copies of the spin-j singlet."""

from .asymptotics import (
    C_FOUR_COPY,
    C_TWO_COPY,
    C_UNFAVOURABLE,
    Regime,
    ScanRow,
    amplitude_curvature,
    leading_integral,
    leading_term,
    residual_scan,
)
from .covariant import ErrorReport, Method, error_via_quadrature, exact_error, n_copy_error, outcome_density, optimal_state_coefficients
from .decomposition import (
    CoefficientVector,
    MultiplicityTable,
    closed_form_multiplicity,
    coefficient_vector,
    coefficient_vector_via_character_integral,
    multiplicity_table,
)
from .errors import ToleranceError
from .filters import FilterDesign, conditional_error, design_filter, repeated_filter_success
from .fisher import CrbGap, QfiMatrix, crb_error_bound, crb_gap_report, qfi_matrix
from .locc import LoccBound, SingleSpinState, locc_single_pair_bound, single_spin_state_error
from .montecarlo import McResult, chebyshev_check, simulate_protocol
from .su2 import ClassAngle, QuadratureRule, QuadratureSpec, Spin, character, haar_class_weight, squared_axis_distance

__version__ = "0.1.0"
