"""List decoding of folded, derivative and multiplicity codes, with local
correction for the multiplicity family.

The fast decoders reduce interpolation and root finding to structured linear
algebra; exhaustive oracles in `listdec.oracle` define what every decoder
must return.
"""

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    CodeError,
    ContextMismatch,
    DegreeTooLarge,
    DivisionByZero,
    IndexOverflow,
    LengthMismatch,
    ParamOutOfRange,
    ShapeMismatch,
    ShiftRequired,
    ZeroDirection,
)
from .field import (
    FieldCtx,
    FieldElem,
    GF,
    MultiPoly,
    Poly,
    find_primitive,
    formal_derivative,
    frobenius_shift_check,
    hasse_derivative,
    multiplicity,
    poly_from_text,
    poly_to_text,
    weight_exponents,
)
from .words import SymbolMatrix
from .frs import (
    FrsParams,
    choose_capacity_params,
    default_params,
    fold,
    frs_decoding_radius,
    frs_encode,
    frs_min_distance,
    frs_rate,
    frs_word_from_text,
    frs_word_to_text,
    unfold,
)
from .results import AffineSolutionSet, DecodeResult
from .frs_decode import (
    InterpolationPoly,
    agreement_threshold,
    degree_param,
    interpolate,
    list_decode,
    prune,
    solve_affine,
)
from .hensel import (
    base_roots,
    enumerate_lambda,
    hensel_list_decode,
    shift_transform,
    strip_x_power,
)
from .derivative import (
    DerParams,
    DOperatorPoly,
    d_operator,
    default_der_params,
    der_agreement_threshold,
    der_degree_param,
    der_encode,
    der_interpolate,
    der_list_decode,
    der_min_distance,
    der_rate,
    der_solve_affine,
    der_word_from_text,
    der_word_to_text,
)
from .multiplicity import (
    CountingOracle,
    MultParams,
    MultWord,
    bivariate_correct,
    brute_force_mult_decode,
    line_transcript,
    local_correct,
    message_to_multipoly,
    mult_encode,
    mult_params_report,
    mult_word_from_text,
    mult_word_to_text,
    order_s_eval,
    point_rank,
    rank_point,
    restrict_to_line,
    univariate_mult_decode,
)
from .oracle import oracle_list_decode, oracle_y_roots
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
