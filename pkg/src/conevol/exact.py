"""Exact arithmetic over rational multiples of pi and pi**2.

Coefficients are :class:`fractions.Fraction` (always reduced, positive
denominator, zero stored as 0/1).  A :class:`PiScalar` pairs such a
coefficient with a grade ``k`` in ``{0, 1, 2}`` and stands for ``coeff * pi**k``.
Angles and lengths are grade 1, volumes grade 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Rational",
    "GradeError",
    "MAX_GRADE",
    "PiScalar",
    "pi_add",
    "pi_mul",
    "pi_square",
    "rational_new",
    "to_float",
]

MAX_GRADE = 2

Rational = Fraction


class GradeError(ValueError):
    """Raised when two scalars of incompatible grade are combined."""


def rational_new(num: int, den: int = 1) -> Fraction:
    """Build a reduced rational ``num/den``.

    >>> rational_new(-3, -6)
    Fraction(1, 2)
    """
    if den == 0:
        raise ZeroDivisionError(f"rational with zero denominator: {num}/0")
    return Fraction(num, den)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class PiScalar:
    """The exact value ``coeff * pi**grade``."""

    coeff: Fraction
    grade: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeff", _as_fraction(self.coeff))
        if not isinstance(self.grade, int) or not 0 <= self.grade <= MAX_GRADE:
            raise GradeError(f"grade must be in 0..{MAX_GRADE}, got {self.grade!r}")

    @classmethod
    def zero(cls, grade: int = 1) -> PiScalar:
        return cls(Fraction(0), grade)

    @classmethod
    def angle(cls, num: int, den: int = 1) -> PiScalar:
        """Grade-1 scalar ``num/den * pi``."""
        return cls(rational_new(num, den), 1)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def _check_same_grade(self, other: PiScalar, op: str):
        if not isinstance(other, PiScalar):
            raise TypeError(f"cannot {op} PiScalar and {type(other).__name__}")
        if other.grade != self.grade:
            raise GradeError(
                f"cannot {op} pi^{self.grade} and pi^{other.grade} quantities"
            )

    def __add__(self, other: PiScalar) -> PiScalar:
        self._check_same_grade(other, "add")
        return PiScalar(self.coeff + other.coeff, self.grade)

    def __sub__(self, other: PiScalar) -> PiScalar:
        self._check_same_grade(other, "subtract")
        return PiScalar(self.coeff - other.coeff, self.grade)

    def __neg__(self) -> PiScalar:
        return PiScalar(-self.coeff, self.grade)

    def __mul__(self, other) -> PiScalar:
        if isinstance(other, PiScalar):
            grade = self.grade + other.grade
            if grade > MAX_GRADE:
                raise GradeError(
                    f"product pi^{self.grade} * pi^{other.grade} exceeds pi^{MAX_GRADE}"
                )
            return PiScalar(self.coeff * other.coeff, grade)
        try:
            factor = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return PiScalar(self.coeff * factor, self.grade)

    def __rmul__(self, other) -> PiScalar:
        if isinstance(other, PiScalar):
            return other.__mul__(self)
        return self.__mul__(other)

    def __truediv__(self, other) -> PiScalar:
        # division only by plain rationals; dividing by pi would need negative grades
        try:
            factor = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return PiScalar(self.coeff / factor, self.grade)

    def _cmp_key(self, other: PiScalar) -> tuple[Fraction, Fraction]:
        self._check_same_grade(other, "compare")
        return self.coeff, other.coeff

    def __lt__(self, other: PiScalar) -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: PiScalar) -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other: PiScalar) -> bool:
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other: PiScalar) -> bool:
        a, b = self._cmp_key(other)
        return a >= b

    def __float__(self) -> float:
        return to_float(self)

    def __str__(self) -> str:
        return render(self)

    def to_json(self) -> dict:
        return {"coeff": _render_coeff(self.coeff), "grade": self.grade}


def pi_add(a: PiScalar, b: PiScalar) -> PiScalar:
    return a + b


def pi_mul(a: PiScalar, b: PiScalar) -> PiScalar:
    return a * b


def pi_square(x: PiScalar) -> PiScalar:
    if x.grade != 1:
        raise GradeError(f"pi_square expects a grade-1 scalar, got grade {x.grade}")
    return x * x


def to_float(x: PiScalar) -> float:
    """Round ``x`` to a double.  Raises :class:`OverflowError` out of range."""
    value = float(x.coeff) * math.pi**x.grade
    if not math.isfinite(value):
        raise OverflowError(f"{render(x)} is not representable as a double")
    return value


def _render_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


_SUFFIX = {0: "", 1: "*pi", 2: "*pi^2"}


def render(x: PiScalar) -> str:
    """Canonical text: ``a/b``, ``a/b*pi`` or ``a/b*pi^2``; zero is ``0``."""
    if x.coeff == 0:
        return "0"
    return _render_coeff(x.coeff) + _SUFFIX[x.grade]


def render_unicode(x: PiScalar) -> str:
    """Human-table variant of :func:`render` using the pi glyph."""
    if x.coeff == 0:
        return "0"
    suffix = {0: "", 1: "·π", 2: "·π²"}[x.grade]
    return _render_coeff(x.coeff) + suffix
