"""Numerical verification of an explicit split of the divisor-problem
remainder, a divisor-weighted summation formula, and the real-s
approximate functional equation for zeta(s)^2."""

from .arith import (
    EULER_GAMMA,
    DivisorSieve,
    HarmonicExpansion,
    build_divisor_sieve,
    divisor_count,
    divisor_summatory,
    harmonic_expansion,
    harmonic_sum,
)
from .dsum import SmoothFn, Theorem2Breakdown, lhs_divisor_sum, registered, rhs_theorem2, verify_theorem2
from .errors import DivisorError, DomainError, PoleError, RangeError, ResourceError, ToleranceError
from .periodic import TailIntegralResult, cot_closed, cot_partial_fraction, psi, psi2_tail_integral, psi_r, psi_r_fourier
from .quadrature import QuadConfig, quad_with_breakpoints
from .remainder import RemainderBreakdown, A_of, A_trig_integer, B_of, decompose, delta_direct, main_term
from .zeta_afe import AfeRecord, E1, E1_asymptotic, E2, afe_record, hyperbola_identity_rhs, theorem3_rhs, zeta_real

__version__ = "0.1.0"
