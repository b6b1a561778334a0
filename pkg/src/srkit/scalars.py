"""Scalar backends: exact rationals (gmpy2.mpq) and IEEE doubles.

Values from the two backends never mix silently inside a Quaternion: as soon
as one component is a float, every component becomes a float.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction

from gmpy2 import mpq, mpfr, mpz, isqrt

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

_MPQ = type(mpq(0))
_MPZ = type(mpz(0))
_MPFR = type(mpfr(0))

ZERO = mpq(0)
ONE = mpq(1)


def is_exact(x) -> bool:
    return type(x) is _MPQ


def to_exact(x):
    """Convert to an mpq. Floats are converted by their exact binary value."""
    tx = type(x)
    if tx is _MPQ:
        return x
    if tx is int or tx is _MPZ or tx is bool:
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if tx is float or tx is _MPFR:
        return mpq(float(x))
    if isinstance(x, numbers.Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, numbers.Real):
        return mpq(float(x))
    raise TypeError(f"cannot convert {x!r} to a rational scalar")


def to_float(x) -> float:
    return float(x)


def coerce(x, backend: str | None = None):
    """Bring ``x`` into the requested backend.

    With ``backend=None`` the backend is inferred: ints and rationals become
    exact, floats stay floats.
    """
    if backend == FLOAT:
        return float(x) if not isinstance(x, str) else float(Fraction(x))
    if backend == EXACT:
        return to_exact(x)
    tx = type(x)
    if tx is float:
        return x
    if tx is _MPFR or isinstance(x, (numbers.Real,)) and not isinstance(x, numbers.Rational):
        return float(x)
    return to_exact(x)


def sqrt(x):
    """Square root that stays exact when ``x`` is the square of a rational."""
    if is_exact(x):
        if x < 0:
            raise ValueError("square root of a negative scalar")
        n, d = x.numerator, x.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return mpq(rn, rd)
        return math.sqrt(float(x))
    return math.sqrt(x)


def is_zero(x, tol: float = 0.0) -> bool:
    if tol == 0.0 or is_exact(x):
        return x == 0
    return abs(x) <= tol


def parse_scalar(token, backend: str):
    """Parse a JSON scalar token: rational string ("3/2"), int or float."""
    if isinstance(token, bool):
        raise TypeError("booleans are not scalars")
    if backend == EXACT:
        if isinstance(token, float):
            return to_exact(Fraction(repr(token)))
        return to_exact(token)
    if isinstance(token, str):
        return float(Fraction(token.strip()))
    if isinstance(token, numbers.Real):
        return float(token)
    raise TypeError(f"not a scalar: {token!r}")


def format_scalar(x):
    """JSON form: rational string for exact values, plain float otherwise."""
    if is_exact(x):
        return str(x)
    return float(x)
