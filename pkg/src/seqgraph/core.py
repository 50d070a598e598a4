"""Exact numeric values shared by the generators, the graph builder and the I/O layer.

A value is one of three plain Python types:

* ``int``       arbitrary-precision integer
* ``Fraction``  exact rational, always stored in lowest terms by ``fractions``
* ``float``     finite 64-bit real

Python already compares these exactly across types (an ``int`` or ``Fraction``
is compared with a float through the float's exact rational value), so sorting
a mixed list is deterministic and agrees with :func:`value_cmp`.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Union

Value = Union[int, Fraction, float]


class InvalidValue(ValueError):
    pass


def as_value(x) -> Value:
    """Coerce ``x`` to a canonical value, rejecting NaN/inf and booleans."""
    if isinstance(x, bool):
        raise InvalidValue("booleans are not sequence values")
    if isinstance(x, int):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, numbers.Integral):
        return int(x)
    if isinstance(x, numbers.Rational):
        return as_value(Fraction(int(x.numerator), int(x.denominator)))
    if isinstance(x, numbers.Real):
        f = float(x)
        if not math.isfinite(f):
            raise InvalidValue(f"non-finite real {x!r}")
        # -0.0 and 0.0 compare equal; keep one representation
        return f + 0.0
    raise InvalidValue(f"unsupported value type {type(x).__name__}")


def value_cmp(a: Value, b: Value) -> int:
    """Three-way exact comparison: -1, 0 or 1."""
    if a < b:
        return -1
    if b < a:
        return 1
    return 0


def tag(v: Value) -> str:
    if isinstance(v, int):
        return "Int"
    if isinstance(v, Fraction):
        return "Rat"
    return "Real"


# math.gcd already follows the gcd(0, 0) = 0 convention
gcd = math.gcd


def format_value(v: Value) -> str:
    """Render integers as-is, rationals as ``p/q`` and reals with 17 significant digits."""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    s = format(v, ".17g")
    if not any(ch in s for ch in ".einf"):
        s += ".0"
    return s


def parse_value(text: str) -> Value:
    """Inverse of :func:`format_value`."""
    text = text.strip()
    if "/" in text:
        return as_value(Fraction(text))
    try:
        return int(text)
    except ValueError:
        return as_value(float(text))
