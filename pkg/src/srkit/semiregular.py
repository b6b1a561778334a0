"""Semiregular functions N * D^{-1} with a real (slice-preserving) denominator."""

from __future__ import annotations

from . import _realpoly as rp
from .errors import ZeroFunction
from .quat import Quaternion
from .starpoly import (QPoly, component_decompose, evaluate, regular_conjugate,
                       star_mul, symmetrization)


class SemiRegularFn:
    """numerator * denominator^{-1}; the denominator has real coefficients.

    Because the denominator is slice-preserving it commutes with the
    numerator, so left and right quotients agree. Under the exact backend the
    pair is kept reduced: no common real factor, monic denominator, and no
    negative powers in the denominator.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None, reduce: bool = True):
        num = QPoly.coerce(numerator)
        den = QPoly.coerce(1 if denominator is None else denominator)
        if den.is_zero():
            raise ZeroDivisionError("semiregular function with zero denominator")
        if not den.is_slice_preserving():
            raise ValueError("denominator must have real coefficients")
        if reduce:
            num, den = _reduce(num, den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("SemiRegularFn is immutable")

    @classmethod
    def from_qpoly(cls, f: QPoly) -> "SemiRegularFn":
        return cls(f)

    @property
    def exact(self) -> bool:
        return self.numerator.exact and self.denominator.exact

    def is_polynomial(self) -> bool:
        return self.denominator == QPoly.constant(1)

    def __mul__(self, other):
        return semi_mul(self, _as_semi(other))

    def __rmul__(self, other):
        return semi_mul(_as_semi(other), self)

    def __call__(self, q) -> Quaternion:
        # D^{-1} is slice-preserving, so the *-product is the pointwise
        # product with D^{-1} on the left: D(q)^{-1} N(q), not N(q) D(q)^{-1}.
        return evaluate(self.denominator, q).inverse() * evaluate(self.numerator, q)

    def __eq__(self, other):
        if not isinstance(other, SemiRegularFn):
            try:
                other = _as_semi(other)
            except (TypeError, ValueError):
                return NotImplemented
        # cross-multiplication; real denominators commute with everything
        return (star_mul(self.numerator, other.denominator)
                == star_mul(other.numerator, self.denominator))

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def close_to(self, other, tol: float = 1e-9) -> bool:
        other = _as_semi(other)
        return star_mul(self.numerator, other.denominator).close_to(
            star_mul(other.numerator, self.denominator), tol)

    def __repr__(self):
        return f"SemiRegularFn({self.numerator!r} / {self.denominator!r})"


def _as_semi(value) -> SemiRegularFn:
    if isinstance(value, SemiRegularFn):
        return value
    return SemiRegularFn(QPoly.coerce(value))


def _reduce(num: QPoly, den: QPoly) -> tuple:
    # a Laurent denominator q^m D' (m < 0) becomes D' with q^{-m} moved up
    if den.min_degree < 0:
        num = num.shift(-den.min_degree)
        den = den.shift(-den.min_degree)
    if num.is_zero():
        one = QPoly.constant(1 if den.exact else 1.0)
        return QPoly(), one
    if not (num.exact and den.exact):
        lead = float(den.coeffs[-1].w)
        return num / lead, den / lead
    # strip the common real factor q^k, then the gcd of the components
    k = min(num.min_degree, den.min_degree)
    if k > 0:
        num, den = num.shift(-k), den.shift(-k)
    d = [c.w for c in den.dense(0, den.degree)]
    g = d
    if num.min_degree >= 0:
        for comp in component_decompose(num):
            if comp.is_zero():
                continue
            g = rp.gcd(g, [c.w for c in comp.dense(0, comp.degree)])
            if len(g) <= 1:
                break
    if len(g) > 1:
        from .starpoly import divmod_real
        num, _ = divmod_real(num, g)
        den, _ = divmod_real(den, g)
    lead = den.coeffs[-1].w
    if lead != 1:
        num, den = num / lead, den / lead
    return num, den


def star_inverse(f: QPoly) -> SemiRegularFn:
    """f^{-*} = f^c / f^s."""
    f = QPoly.coerce(f)
    if f.is_zero():
        raise ZeroFunction("the zero function has no *-inverse")
    return SemiRegularFn(regular_conjugate(f), symmetrization(f))


def semi_mul(f: SemiRegularFn, g: SemiRegularFn) -> SemiRegularFn:
    """(N1 D1^{-1}) * (N2 D2^{-1}) = (N1 * N2) (D1 D2)^{-1}."""
    f, g = _as_semi(f), _as_semi(g)
    return SemiRegularFn(star_mul(f.numerator, g.numerator),
                         star_mul(f.denominator, g.denominator))


def semi_inverse(f: SemiRegularFn) -> SemiRegularFn:
    """(N D^{-1})^{-*} = D N^c / N^s."""
    f = _as_semi(f)
    if f.numerator.is_zero():
        raise ZeroFunction("the zero function has no *-inverse")
    return SemiRegularFn(star_mul(f.denominator, regular_conjugate(f.numerator)),
                         symmetrization(f.numerator))
