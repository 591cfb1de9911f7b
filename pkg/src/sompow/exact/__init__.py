from .rational import Rational, format_rational, parse_rational
from .qpoly import QPoly
from .qmatrix import QMatrix, char_poly, mat_mul, mat_pow
from .sturm import sturm_isolate_real_roots
from .intervals import Box, Interval

__all__ = [
    "Rational",
    "format_rational",
    "parse_rational",
    "QPoly",
    "QMatrix",
    "mat_mul",
    "mat_pow",
    "char_poly",
    "sturm_isolate_real_roots",
    "Interval",
    "Box",
]
