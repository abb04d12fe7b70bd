"""Exact separating-variety computations for additive-group actions.

Layers, bottom up: exact rational linear algebra (`rationals`), sparse
polynomials with monomial orders (`poly`), a Groebner engine with budgets
and certificates (`groebner`), locally nilpotent derivations and their
flows (`lnd`), the triangular basic actions with their component
decompositions (`basic`), two worked five- and six-variable case studies
(`cases`), and a command line front end (`cli`).
"""

from .errors import (
    AlgebraError,
    RingMismatchError,
    UnknownVariableError,
    NonSquareMatrixError,
    SingularMatrixError,
    DimensionMismatchError,
    EmptyVarietyError,
    ShapeError,
    NilpotencyError,
    ParseError,
)
from .rationals import Rational, QMatrix, rat, rat_arith, mat_det, mat_solve
from .poly import (
    Ring,
    Polynomial,
    MonomialOrder,
    Lex,
    GrevLex,
    Block,
    poly_arith,
    differentiate,
    evaluate,
    substitute,
    format_poly,
)
from .groebner import (
    Ideal,
    GroebnerBasis,
    GBTimeout,
    Budget,
    buchberger,
    spolynomial,
    normal_form,
    radical_member,
    variety_contained,
    ContainmentCertificate,
    eliminate,
    dimension,
    krull_dimension,
    DimensionResult,
    load_ideal,
    dump_ideal,
    save_ideal,
    parse_ideal_text,
)
from .lnd import (
    Derivation,
    Point,
    LocalSlice,
    verify_locally_nilpotent,
    exp_action,
    act_on_point,
    local_slice,
    slice_localize,
    orbit_decide,
    orbit_membership_exact,
    ProductSetup,
    product_setup,
    graph_ideal,
    GraphTimeout,
    load_derivation,
    dump_derivation,
    save_derivation,
    parse_derivation_text,
)
from .basic import (
    BasicAction,
    weitzenbock,
    invariant_f,
    slice_s,
    ideal_I,
    ideal_I_radical_check,
    sep_presentation,
    Candidate,
    m_set_ideal,
    matrix_M,
    lemma_b_value,
    binomial_sum,
    Curve,
    CurveReport,
    curve_construct,
    curve_verify,
    containment_curve_certificate,
    decompose,
    ComponentReport,
    DecompositionReport,
)
from .cases import CaseStudy, CaseReport, df5, f6, df5_verify, f6_verify

__version__ = "0.1.0"
