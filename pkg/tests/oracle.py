"""Symbolic transcriptions of the formulas, used only as test oracles.

Written directly in sympy with a symbolic pi and independent of the
package's PiScalar arithmetic.
"""
from fractions import Fraction

import sympy as sp

pi = sp.pi


def to_sympy(x):
    return sp.Rational(x.coeff.numerator, x.coeff.denominator) * pi**x.grade


def angle(coeff: Fraction):
    return sp.Rational(coeff.numerator, coeff.denominator) * pi


def bounds(p, q):
    return (2 * pi * (1 - sp.Rational(1, p) - sp.Rational(1, q)),
            2 * pi * (1 - sp.Rational(1, p) + sp.Rational(1, q)))


def volume(p, q, alpha):
    return sp.Rational(p * q, 2) * (alpha / 2 - pi * (1 - sp.Rational(1, p) - sp.Rational(1, q)))**2


def length(p, q, alpha):
    lcm = sp.ilcm(p, q)
    return lcm * (alpha / 2 - pi * (1 - sp.Rational(1, p) - sp.Rational(1, q)))


def two_bridge(p, alpha, beta):
    return sp.Rational(1, 2 * p) * ((alpha + beta) / 2 * p - pi * (p - 1))**2


def same(expr, x) -> bool:
    return sp.expand(expr - to_sympy(x)) == 0
