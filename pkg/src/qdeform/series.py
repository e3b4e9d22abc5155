"""Truncated power series in one central (commuting) variable.

Used for scalar factors that depend only on the product theta = mu*nu,
and for series in a single operator generator where no ordering issues
arise.  Coefficients are exact RationalComplex values.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .rational import ONE, RationalComplex, format_scalar


class ScalarSeries:
    """Series sum_k c_k * var^k, truncated at power ``degree`` (inclusive).

    Zero coefficients are never stored.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        if degree < 0:
            raise ValueError("truncation degree must be >= 0")
        self.degree = int(degree)
        clean = {}
        for power, value in (coeffs or {}).items():
            power = int(power)
            if power < 0:
                raise ValueError("series powers must be >= 0")
            if power > self.degree:
                continue
            if not isinstance(value, RationalComplex):
                value = RationalComplex(value)
            if not value.is_zero:
                clean[power] = value
        self.coeffs = clean

    @classmethod
    def constant(cls, value, degree: int) -> "ScalarSeries":
        return cls(degree, {0: value})

    def coefficient(self, power: int) -> RationalComplex:
        return self.coeffs.get(power, RationalComplex(0))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def truncated(self, degree: int) -> "ScalarSeries":
        return ScalarSeries(degree, self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ScalarSeries):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.coeffs))))

    def __add__(self, other: "ScalarSeries") -> "ScalarSeries":
        _check_degree(self, other)
        out = dict(self.coeffs)
        for power, value in other.coeffs.items():
            out[power] = out.get(power, RationalComplex(0)) + value
        return ScalarSeries(self.degree, out)

    def __sub__(self, other: "ScalarSeries") -> "ScalarSeries":
        return self + (-other)

    def __neg__(self) -> "ScalarSeries":
        return ScalarSeries(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other: "ScalarSeries") -> "ScalarSeries":
        _check_degree(self, other)
        out: dict[int, RationalComplex] = {}
        for p1, c1 in self.coeffs.items():
            for p2, c2 in other.coeffs.items():
                power = p1 + p2
                if power > self.degree:
                    continue
                value = c1 * c2
                out[power] = out.get(power, RationalComplex(0)) + value
        return ScalarSeries(self.degree, out)

    def scaled(self, scalar) -> "ScalarSeries":
        return ScalarSeries(self.degree, {k: v * scalar for k, v in self.coeffs.items()})

    def divide(self, other: "ScalarSeries") -> "ScalarSeries":
        """Exact long division; ``other`` must have a nonzero constant term."""
        _check_degree(self, other)
        lead = other.coefficient(0)
        if lead.is_zero:
            raise ZeroDivisionError("divisor series has zero constant term")
        quot: dict[int, RationalComplex] = {}
        for power in range(self.degree + 1):
            acc = self.coefficient(power)
            for k, q in quot.items():
                b = other.coefficient(power - k)
                if not b.is_zero:
                    acc = acc - q * b
            if not acc.is_zero:
                quot[power] = acc / lead
        return ScalarSeries(self.degree, quot)

    def to_text(self, var: str = "theta") -> str:
        """Canonical form, e.g. ``1/2 + (1/24)*theta^2``; terms in power order."""
        if not self.coeffs:
            return "0"
        chunks = []
        for power in sorted(self.coeffs):
            sign, body = term_text(self.coeffs[power], _var_factors(var, power))
            chunks.append((sign, body))
        return join_terms(chunks)

    def __repr__(self):
        return f"ScalarSeries(degree={self.degree}, {self.to_text('t')!r})"


def _check_degree(a: ScalarSeries, b: ScalarSeries) -> None:
    if a.degree != b.degree:
        raise ValueError(
            f"mismatched truncation degrees: {a.degree} != {b.degree}"
        )


def _var_factors(var: str, power: int) -> list[str]:
    if power == 0:
        return []
    if power == 1:
        return [var]
    return [f"{var}^{power}"]


def term_text(scalar: RationalComplex, factors: list[str]) -> tuple[int, str]:
    """Render one product term; returns (sign, body) with sign pulled out
    when the scalar is pure real or pure imaginary."""
    sign = 1
    if not scalar.im and scalar.re < 0:
        sign, scalar = -1, -scalar
    elif not scalar.re and scalar.im < 0:
        sign, scalar = -1, -scalar
    if not factors:
        return sign, format_scalar(scalar)
    if scalar == ONE:
        return sign, "*".join(factors)
    return sign, f"({format_scalar(scalar)})*" + "*".join(factors)


def join_terms(chunks: list[tuple[int, str]]) -> str:
    parts = []
    for idx, (sign, body) in enumerate(chunks):
        if idx == 0:
            parts.append(("-" if sign < 0 else "") + body)
        else:
            parts.append((" - " if sign < 0 else " + ") + body)
    return "".join(parts)


def sin_series(degree: int) -> ScalarSeries:
    coeffs = {}
    for n in range(1, degree + 1, 2):
        coeffs[n] = RationalComplex(Fraction((-1) ** ((n - 1) // 2), factorial(n)))
    return ScalarSeries(degree, coeffs)


def cos_series(degree: int) -> ScalarSeries:
    coeffs = {}
    for n in range(0, degree + 1, 2):
        coeffs[n] = RationalComplex(Fraction((-1) ** (n // 2), factorial(n)))
    return ScalarSeries(degree, coeffs)
