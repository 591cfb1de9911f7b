"""sompow: exact decision procedures for eventual non-negativity / positivity
of weighted sums of powers of rational matrices.

Everything is computed in exact arithmetic: rational scalars, rational
polynomials, real algebraic numbers represented by squarefree defining
polynomials with isolating intervals, and quotient-ring elements with lazy
splitting.  No floating point enters any verdict.
"""

__version__ = "0.1.0"
