"""Exact Fourier expansions of Jacobi forms of lattice index.

Theta-products, eta quotients, pullbacks, Hecke operators, additive lifts
and Weil representations, all in exact rational or cyclotomic arithmetic.
"""

from .formlang import eval_form, parse_form, print_form
from .lattice import Lattice, build_root, discriminant_group
from .series import FormShape, FourierSeries, classify, ord_

__version__ = "0.1.0"

__all__ = [
    "FormShape",
    "FourierSeries",
    "Lattice",
    "build_root",
    "classify",
    "discriminant_group",
    "eval_form",
    "ord_",
    "parse_form",
    "print_form",
]
