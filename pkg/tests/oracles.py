"""Independent oracles for freezing expected values.

Deliberately avoid the library's computation paths: the reordering
oracle applies the single rewrite px -> xp - i one occurrence at a time;
the series helpers work on plain Fraction lists.
"""

from fractions import Fraction

from qdeform.rational import MINUS_I, RationalComplex


def normal_order_word(word: str) -> dict[tuple[int, int], RationalComplex]:
    """Normal-order a word over {'x', 'p'} by single-swap rewriting.

    Returns {(x_pow, p_pow): coefficient}; a word is normal-ordered once
    it has no adjacent "px".
    """
    states: dict[str, RationalComplex] = {word: RationalComplex(1)}
    done: dict[tuple[int, int], RationalComplex] = {}
    while states:
        new: dict[str, RationalComplex] = {}
        for w, coeff in states.items():
            pos = w.find("px")
            if pos < 0:
                key = (w.count("x"), w.count("p"))
                done[key] = done.get(key, RationalComplex(0)) + coeff
                continue
            swapped = w[:pos] + "xp" + w[pos + 2 :]
            dropped = w[:pos] + w[pos + 2 :]
            new[swapped] = new.get(swapped, RationalComplex(0)) + coeff
            new[dropped] = new.get(dropped, RationalComplex(0)) + coeff * MINUS_I
        states = {w: c for w, c in new.items() if not c.is_zero}
    return {k: v for k, v in done.items() if not v.is_zero}


def tan_coefficients(max_power: int) -> list[Fraction]:
    """Maclaurin coefficients of tan via the recurrence from tan' = 1 + tan^2."""
    coeffs = [Fraction(0)] * (max_power + 1)
    if max_power >= 1:
        coeffs[1] = Fraction(1)
    for n in range(1, max_power):
        acc = Fraction(0)
        for i in range(n + 1):
            acc += coeffs[i] * coeffs[n - i]
        coeffs[n + 1] = acc / (n + 1)
    return coeffs


def square_coefficients(coeffs: list[Fraction], max_power: int) -> list[Fraction]:
    """Coefficients of f^2 from those of f, up to max_power."""
    out = [Fraction(0)] * (max_power + 1)
    for i, ci in enumerate(coeffs):
        if ci == 0:
            continue
        for j, cj in enumerate(coeffs):
            if cj == 0 or i + j > max_power:
                continue
            out[i + j] += ci * cj
    return out


def prefactor_coefficients(max_power: int) -> list[Fraction]:
    """Coefficients of sin(t)/(t(1+cos t)) via tan(t/2)/t.

    tan(t/2) = sum_k c_k t^k / 2^k, so the coefficient of t^m here is
    c_(m+1) / 2^(m+1); independent of the engine's sin/cos division.
    """
    tan = tan_coefficients(max_power + 1)
    return [tan[m + 1] / Fraction(2 ** (m + 1)) for m in range(max_power + 1)]
