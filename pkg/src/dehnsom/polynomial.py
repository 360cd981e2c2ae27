"""Dense exact-rational polynomials in one variable.

All identity verifications in this package reduce to equality of such
polynomials; coefficients are ``fractions.Fraction`` so nothing is ever
rounded. Trailing zero coefficients are trimmed, the zero polynomial has an
empty coefficient tuple and degree -1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import InternalError

Scalar = Union[int, Fraction]


def binom(n: int, k: int) -> int:
    """C(n, k) with C(n, k) = 0 for k < 0 or k > n. Requires n >= 0."""
    if n < 0:
        raise InternalError(f"binomial with negative upper argument: C({n},{k})")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def sign(n: int) -> int:
    """(-1)^n as an exact integer, valid for negative n as well."""
    return -1 if n & 1 else 1


class ExactPolynomial:
    """Immutable polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ExactPolynomial is immutable")

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "ExactPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "ExactPolynomial":
        return cls((1,))

    @classmethod
    def x_minus_one_power(cls, n: int) -> "ExactPolynomial":
        """(x - 1)^n expanded exactly."""
        if n < 0:
            raise InternalError(f"(x-1)^{n} requested")
        return cls([binom(n, k) * (-1) ** (n - k) for k in range(n + 1)])

    # --- inspection ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise InternalError(f"non-integer coefficients where integers were proven: {self}")
        return tuple(int(c) for c in self.coeffs)

    def __call__(self, value: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial([-c for c in self.coeffs])

    def __mul__(self, other) -> "ExactPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "ExactPolynomial":
        return ExactPolynomial([a * c for a in self.coeffs])

    def reversed_at(self, n: int) -> "ExactPolynomial":
        """x^n * p(1/x); requires n >= deg p so the result is a polynomial."""
        if n < self.degree:
            raise InternalError(f"reversal degree {n} below polynomial degree {self.degree}")
        out = [Fraction(0)] * (n + 1)
        for k, c in enumerate(self.coeffs):
            out[n - k] = c
        return ExactPolynomial(out)

    def truncate(self, max_degree: int) -> "ExactPolynomial":
        return ExactPolynomial(self.coeffs[: max_degree + 1])

    # --- equality / display -------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def serialize(self) -> list:
        """Coefficient array, lowest degree first; Fractions become 'p/q' strings."""
        return [int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
                for c in self.coeffs]

