from .elimination import ideals_equal, join_ideal, secant, symbolic_power_by_join
from .engine import (
    DEGLEX,
    BlockOrder,
    Budget,
    DegLex,
    GroebnerBasis,
    IdealPresentation,
    buchberger,
    s_pairs_reduce_to_zero,
)
from .verify import (
    shape_subtableau,
    product_generators,
    standard_rep_gamma_check,
    verify_minors_gb,
    verify_primary_decomposition,
    verify_symbolic_power,
)

__all__ = [
    "DEGLEX",
    "BlockOrder",
    "Budget",
    "DegLex",
    "GroebnerBasis",
    "IdealPresentation",
    "buchberger",
    "s_pairs_reduce_to_zero",
    "ideals_equal",
    "join_ideal",
    "secant",
    "symbolic_power_by_join",
    "shape_subtableau",
    "product_generators",
    "standard_rep_gamma_check",
    "verify_minors_gb",
    "verify_primary_decomposition",
    "verify_symbolic_power",
]
