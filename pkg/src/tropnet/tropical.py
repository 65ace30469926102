"""Tropical numbers: exact rationals extended by -inf.

Finite values are ``fractions.Fraction``; the absorbing bottom element is the
float ``-inf``.  Python's mixed arithmetic then gives the max-plus rules for
free: ``Fraction + -inf == -inf`` and ``-inf < Fraction(x)`` for every x.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

NEG_INF = float("-inf")

Weight = Union[Fraction, float]


def to_weight(value) -> Weight:
    """Coerce ints, Fractions, decimal/ratio strings and -inf to a tropical number."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value == NEG_INF:
            return NEG_INF
        if math.isnan(value) or math.isinf(value):
            raise ValueError(f"{value!r} is not a tropical number")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("-inf", "-infinity", "neg_inf"):
            return NEG_INF
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a tropical number")


def is_finite(value: Weight) -> bool:
    return value != NEG_INF


def tsum(values: Iterable[Weight]) -> Weight:
    """Ordinary sum with -inf absorbing; the empty sum is 0."""
    total: Weight = Fraction(0)
    for v in values:
        if v == NEG_INF:
            return NEG_INF
        total += v
    return total


def format_weight(value: Weight) -> str:
    if value == NEG_INF:
        return "-inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
