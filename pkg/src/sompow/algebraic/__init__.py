"""Exact algebraic-number machinery: resultant compositions, certified
complex root isolation, real algebraic arithmetic, residue field
elements with lazy splitting, and modulus/angle classification."""

from .classes import (
    ModulusClass,
    angle_order,
    euler_phi,
    is_zero_root,
    modulus_classes,
    power_real_sign,
    ratio_root_of_unity,
    root_modulus_squared,
)
from .field import (
    ComplexAlgebraic,
    FieldElement,
    Split,
    SplitRequired,
    field_arith,
    field_inverse,
    value_poly,
)
from .realalg import DegreeCapExceeded, RealAlgebraic, real_from_enclosure
from .resultants import (
    neg_poly,
    prod_poly,
    ratio_poly,
    rational_roots,
    resultant,
    reverse_poly,
    scale_poly,
    shift_poly,
    square_roots_poly,
    sum_poly,
)
from .rootsets import Root, RootSet

__all__ = [
    "ComplexAlgebraic",
    "DegreeCapExceeded",
    "FieldElement",
    "ModulusClass",
    "RealAlgebraic",
    "Root",
    "RootSet",
    "Split",
    "SplitRequired",
    "angle_order",
    "euler_phi",
    "field_arith",
    "field_inverse",
    "is_zero_root",
    "modulus_classes",
    "neg_poly",
    "power_real_sign",
    "prod_poly",
    "ratio_poly",
    "rational_roots",
    "ratio_root_of_unity",
    "real_from_enclosure",
    "resultant",
    "reverse_poly",
    "root_modulus_squared",
    "scale_poly",
    "shift_poly",
    "square_roots_poly",
    "sum_poly",
    "value_poly",
]
