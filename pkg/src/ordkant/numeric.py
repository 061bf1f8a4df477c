"""Scalar handling for the two numeric modes.

Exact mode works with :class:`fractions.Fraction` throughout and compares
with tolerance zero. Approximate mode works with floats and a global
tolerance (``DEFAULT_TOL``) that must be requested explicitly.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Union

Number = Union[Fraction, float, int]

DEFAULT_TOL = 1e-9


class NumericModeError(ValueError):
    """A value does not fit the requested numeric mode."""


def to_number(value, exact: bool = True) -> Number:
    """Convert ``value`` into the scalar type of the given mode.

    In exact mode strings like ``"3/4"`` and integers are accepted; floats are
    refused because they would silently carry binary rounding into ``= 0``
    decisions.
    """
    if exact:
        if isinstance(value, bool):
            raise NumericModeError(f"boolean is not a number: {value!r}")
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except ValueError as exc:
                raise NumericModeError(f"not a rational: {value!r}") from exc
        if isinstance(value, float):
            raise NumericModeError(
                f"float {value!r} given in exact mode; pass a rational string"
            )
        raise NumericModeError(f"cannot interpret {value!r} as a rational")
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


def fmt(value: Number) -> str | float:
    """Serialize a scalar: canonical lowest-terms string for rationals."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return float(value)


def is_zero(x: Number, tol: float = 0) -> bool:
    return abs(x) <= tol


def common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = lcm(den, Fraction(v).denominator)
    return den
