"""Level-dependent Hermite multiwavelet filter banks.

Construction of interpolatory exponential Hermite subdivision masks,
their biorthogonal filter-bank completion with polynomial and
exponential vanishing moments, cancellation-operator factorizations, and
a multilevel analysis/synthesis transform on Hermite (value plus
derivative) data.
"""

from .annihilator import (
    Annihilator,
    SpaceSpec,
    apply,
    check_eigvec_condition,
    check_two_level_identity,
    dilation_matrix,
    make_annihilator,
    make_taylor,
    taylor_distance,
)
from .filterbank import (
    CompressionReport,
    FactorizationPair,
    FilterBank,
    analyze,
    build,
    build_at,
    check_biorthogonality,
    check_vanishing_moments,
    compress,
    compute_R,
    compute_S,
    factorization_pair,
    synthesize,
)
from .laurent import DivisionError, Mask, MatLaurent, max_coeff_dev, unit_circle_points
from .signal import (
    DetailSignal,
    HermiteSignal,
    SignalFormatError,
    exponential,
    hyperbolic_cosine,
    monomial,
    norms,
    read_signal,
    sample_function,
    sine,
    write_signal,
)
from .subdivision import (
    A_MINUS_1,
    LevelMask,
    LimitFunctionTable,
    check_refinement_equation,
    check_spectral_condition,
    closed_form_phi,
    compare_cascade_closed_form,
    derive_mask_from_interpolation,
    interpolatory_residual,
    make_mask,
    render_basic_limit,
    subdivide,
    subdivide_periodic,
)

__version__ = "0.1.0"
