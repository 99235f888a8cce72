"""Exact algebra for determinantal ideals of extended Hankel arrangements."""
from .chains import CChain, Tableau, c_decompose, gamma_t, gamma_tc, shape_of
from .errors import BudgetExceeded, HankelForgeError
from .hankel import HankelConfig, maximal_minor, t_minors
from .polyring import Monomial, Polynomial

__version__ = "0.1.0"

__all__ = [
    "CChain",
    "Tableau",
    "c_decompose",
    "gamma_t",
    "gamma_tc",
    "shape_of",
    "BudgetExceeded",
    "HankelForgeError",
    "HankelConfig",
    "maximal_minor",
    "t_minors",
    "Monomial",
    "Polynomial",
]
