"""Exact t-norm quantales on [0,1] and flat-ideal decision procedures."""

from .pwfn import (
    Breakpoint,
    PwFn,
    SupResult,
    affine_transport,
    parse_pwfn_body,
    pointwise_max,
    pointwise_min,
    print_pwfn,
    pwfn,
    transport_domain,
)
from .rat import DomainError, ExactnessError, ParseError, Rat, fmt_rat, parse_rat
from .report import CheckReport, PairWitness, PointWitness, TensorWitness
from .tnorms import (
    GODEL,
    LUKASIEWICZ,
    PRODUCT,
    Frame,
    OrdinalSumTNorm,
    Summand,
    SummandKind,
    builtin,
    make_tnorm,
)
from .order import (
    check_lower_set,
    check_upper_set,
    d_L,
    d_R,
    principal_lower,
    principal_upper,
    tensor,
)
from .ideal import (
    KInterval,
    KSet,
    NetSpec,
    check_flat,
    extract_principal,
    is_inhabited,
    k_set,
    net_ideal,
    restrict_ideal,
    tensor_via_k,
    witness_upper_pair,
)
from .oracle import (
    GridSpec,
    TrialConfig,
    equivalence_harness,
    falsify_flat,
    falsify_lower_set,
    falsify_upper_set,
    lemma37_suite,
    verify_adjunction,
    verify_sandwich,
)

__all__ = [
    "Breakpoint",
    "CheckReport",
    "DomainError",
    "ExactnessError",
    "Frame",
    "GODEL",
    "GridSpec",
    "KInterval",
    "KSet",
    "LUKASIEWICZ",
    "NetSpec",
    "OrdinalSumTNorm",
    "PRODUCT",
    "PairWitness",
    "ParseError",
    "PointWitness",
    "PwFn",
    "Rat",
    "Summand",
    "SummandKind",
    "SupResult",
    "TensorWitness",
    "TrialConfig",
    "affine_transport",
    "builtin",
    "check_flat",
    "check_lower_set",
    "check_upper_set",
    "d_L",
    "d_R",
    "equivalence_harness",
    "extract_principal",
    "falsify_flat",
    "falsify_lower_set",
    "falsify_upper_set",
    "fmt_rat",
    "is_inhabited",
    "k_set",
    "lemma37_suite",
    "make_tnorm",
    "net_ideal",
    "parse_pwfn_body",
    "parse_rat",
    "pointwise_max",
    "pointwise_min",
    "principal_lower",
    "principal_upper",
    "print_pwfn",
    "pwfn",
    "restrict_ideal",
    "tensor",
    "tensor_via_k",
    "transport_domain",
    "verify_adjunction",
    "verify_sandwich",
    "witness_upper_pair",
]
