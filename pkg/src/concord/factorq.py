"""Factorization of univariate rational polynomials, delegated to sympy.

Input and output use the package's dense ascending-coefficient convention;
factors come back monic with multiplicities, deterministically ordered.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .rings import Poly, poly_monic, poly_normalize

_T = sympy.Symbol("t")


def factor_rational_poly(p) -> tuple:
    """Monic irreducible factors over Q with multiplicities.

    Returns a tuple of (factor, multiplicity) pairs, each factor a monic
    ascending-coefficient tuple of Fractions with degree >= 1, sorted by
    (degree, coefficients).  The rational unit is discarded.
    """
    p = poly_normalize(p)
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    expr = sympy.Poly([sympy.Rational(c) for c in reversed(p)], _T, domain="QQ")
    _, factors = expr.factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [Fraction(c.p, c.q) for c in reversed(sympy.Poly(fac, _T).all_coeffs())]
        q = poly_monic(poly_normalize(coeffs))
        if len(q) > 1:
            out.append((q, int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return tuple(out)
