"""Scalar coercion and formatting for the two coefficient modes.

Exact mode uses :class:`gmpy2.mpq`; float mode uses Python floats.
"""

from decimal import Decimal
from fractions import Fraction
import numbers

from gmpy2 import mpq

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

#: coefficients with smaller magnitude are dropped in float mode
FLOAT_EPS = 1e-15


def to_exact(x):
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, (int, Fraction)) or type(x) is type(mpq(0)):
        return mpq(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            return mpq(s)
        return mpq(Fraction(Decimal(s)))
    if isinstance(x, float):
        return mpq(Fraction(x))
    if isinstance(x, numbers.Rational):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def to_float(x):
    if isinstance(x, str):
        return float(Fraction(x)) if "/" in x else float(x)
    return float(x)


def coerce(x, mode):
    return to_exact(x) if mode == EXACT else to_float(x)


def is_zero(x, mode):
    if mode == EXACT:
        return x == 0
    return abs(x) < FLOAT_EPS


def format_exact(x):
    """``p/q`` string, or ``p`` when the denominator is one."""
    return str(mpq(x))


def format_float(x):
    return float(format(float(x), ".15g"))


def format_scalar(x, mode):
    return format_exact(x) if mode == EXACT else format_float(x)


def parse_scalar(value, mode):
    """Inverse of :func:`format_scalar`; also accepts plain JSON numbers."""
    return coerce(value, mode)
