"""Automorphism data of smooth plane curves in exact arithmetic."""

from .cyclotomic import CycNum, is_root_of_unity, zeta
from .forms import Monomial, ParamPoly, ProjMatrix, TernaryForm, core_and_exponent, partials, substitute
from .parser import parse_form

__version__ = "0.1.0"

__all__ = [
    "CycNum",
    "Monomial",
    "ParamPoly",
    "ProjMatrix",
    "TernaryForm",
    "core_and_exponent",
    "is_root_of_unity",
    "parse_form",
    "partials",
    "substitute",
    "zeta",
]
