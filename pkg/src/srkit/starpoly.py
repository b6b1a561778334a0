"""Laurent polynomials sum_n q^n a_n with right quaternion coefficients.

The *-product of two such polynomials is the Cauchy product of their
coefficient sequences, with coefficients multiplied in H. Real-coefficient
polynomials are exactly the slice-preserving ones and commute with
everything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import scalars
from .errors import NotPolynomial, NotUnitImaginary, PoleAtZero
from .quat import (FLOAT_UNIT_TOL, Quaternion, is_unit_imaginary, qmul)
from .scalars import is_exact, mpq


def _zero_like(exact: bool) -> Quaternion:
    z = mpq(0) if exact else 0.0
    return Quaternion._raw(z, z, z, z, exact)


class QPoly:
    """f(q) = sum_{n=m}^{N} q^n a_n in canonical (trimmed) form.

    ``coeffs[k]`` is the coefficient of ``q**(min_degree + k)``. The zero
    polynomial has no coefficients and ``min_degree == 0``.
    """

    __slots__ = ("min_degree", "coeffs")

    def __init__(self, coeffs: Iterable = (), min_degree: int = 0):
        cs = [Quaternion.coerce(c) for c in coeffs]
        if cs and not all(c.exact for c in cs):
            cs = [c.to_float() for c in cs]
        lo, hi = 0, len(cs)
        while lo < hi and cs[lo].is_zero():
            lo += 1
        while hi > lo and cs[hi - 1].is_zero():
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "min_degree", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "min_degree", int(min_degree) + lo)
            object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    # construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, c) -> "QPoly":
        return cls([Quaternion.coerce(c)])

    @classmethod
    def monomial(cls, n: int, c=1) -> "QPoly":
        return cls([Quaternion.coerce(c)], n)

    @classmethod
    def from_dict(cls, terms: dict) -> "QPoly":
        """Build from {degree: coefficient}."""
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        cs = []
        for n in range(lo, hi + 1):
            cs.append(Quaternion.coerce(terms.get(n, 0)))
        return cls(cs, lo)

    @classmethod
    def linear(cls, root) -> "QPoly":
        """q - root."""
        root = Quaternion.coerce(root)
        one = Quaternion(1) if root.exact else Quaternion(1.0)
        return cls([-root, one])

    @classmethod
    def from_real(cls, values: Sequence, min_degree: int = 0) -> "QPoly":
        return cls([Quaternion(v) for v in values], min_degree)

    @staticmethod
    def coerce(value) -> "QPoly":
        if isinstance(value, QPoly):
            return value
        return QPoly.constant(value)

    # basic properties -----------------------------------------------------

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.coeffs)

    @property
    def degree(self) -> int:
        """Top degree N; -1 for the zero polynomial (by convention)."""
        if not self.coeffs:
            return -1
        return self.min_degree + len(self.coeffs) - 1

    @property
    def max_degree(self) -> int:
        return self.degree

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_polynomial(self) -> bool:
        return self.min_degree >= 0

    def is_slice_preserving(self, tol: float = 0.0) -> bool:
        return all(c.is_real(tol) for c in self.coeffs)

    is_real = is_slice_preserving

    def coeff(self, n: int) -> Quaternion:
        k = n - self.min_degree
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _zero_like(self.exact if self.coeffs else True)

    def terms(self):
        """Yield (degree, coefficient) for nonzero coefficients."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield self.min_degree + k, c

    def to_float(self) -> "QPoly":
        return QPoly([c.to_float() for c in self.coeffs], self.min_degree)

    def to_exact(self) -> "QPoly":
        return QPoly([c.to_exact() for c in self.coeffs], self.min_degree)

    def dense(self, lo: int, hi: int) -> list:
        return [self.coeff(n) for n in range(lo, hi + 1)]

    def coefficient_norm(self, radius: float = 1.0) -> float:
        """sum_n |a_n| radius^n, a sup bound on |q| = radius."""
        return sum(abs(c) * float(radius) ** n for n, c in self.terms())

    def component_norm(self, radius: float = 1.0) -> float:
        """sum_n sum_l |a_{n,l}| radius^n, a sup bound for the matrix norm."""
        total = 0.0
        for n, c in self.terms():
            total += sum(abs(float(t)) for t in c.components()) * float(radius) ** n
        return total

    def chop(self, tol: float = 1e-14) -> "QPoly":
        """Zero every float coefficient component below ``tol`` in magnitude."""
        if self.exact:
            return self
        cs = []
        for c in self.coeffs:
            cs.append(Quaternion(*[0.0 if abs(t) <= tol else t for t in c.components()]))
        return QPoly(cs, self.min_degree)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = QPoly.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.degree, other.degree)
        return QPoly([self.coeff(n) + other.coeff(n) for n in range(lo, hi + 1)], lo)

    __radd__ = __add__

    def __neg__(self):
        return QPoly([-c for c in self.coeffs], self.min_degree)

    def __sub__(self, other):
        return self + (-QPoly.coerce(other))

    def __rsub__(self, other):
        return QPoly.coerce(other) - self

    def __mul__(self, other):
        return star_mul(self, QPoly.coerce(other))

    def __rmul__(self, other):
        return star_mul(QPoly.coerce(other), self)

    def __pow__(self, n: int):
        return star_pow(self, n)

    def scale(self, s) -> "QPoly":
        return QPoly([c.scale(s) for c in self.coeffs], self.min_degree)

    def __truediv__(self, s):
        """Division by a real scalar."""
        s = scalars.coerce(s)
        if is_exact(s) and self.exact:
            return self.scale(1 / s)
        return self.scale(1.0 / float(s))

    def shift(self, k: int) -> "QPoly":
        """q^k * f."""
        return QPoly(self.coeffs, self.min_degree + k)

    def conj(self) -> "QPoly":
        return regular_conjugate(self)

    def __call__(self, q):
        return evaluate(self, q)

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            try:
                other = QPoly.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.min_degree == other.min_degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.min_degree, self.coeffs))

    def close_to(self, other, tol: float = 1e-9) -> bool:
        """Coefficientwise comparison in the max quaternion norm."""
        d = self - QPoly.coerce(other)
        return all(abs(c) <= tol for c in d.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "QPoly(0)"
        parts = [f"q^{n}*{c!r}" for n, c in self.terms()]
        return "QPoly(" + " + ".join(parts) + ")"


def qpoly(*coeffs, min_degree: int = 0) -> QPoly:
    """Shorthand: qpoly(a0, a1, ...) = a0 + q a1 + ..."""
    return QPoly([Quaternion.coerce(c) for c in coeffs], min_degree)


# the *-product ---------------------------------------------------------------

def _int_components(p: QPoly):
    """Rewrite an exact polynomial as (integer components, common denominator)."""
    den = 1
    for c in p.coeffs:
        for t in (c.w, c.x, c.y, c.z):
            d = int(t.denominator)
            if d != 1:
                den = den * d // _gcd(den, d)
    rows = []
    for c in p.coeffs:
        rows.append(tuple(int(t.numerator) * (den // int(t.denominator))
                          for t in (c.w, c.x, c.y, c.z)))
    return rows, den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _convolve_exact(f: QPoly, g: QPoly) -> list:
    # Integer convolution over a common denominator: one rational per output
    # component instead of one per partial product.
    fa, fd = _int_components(f)
    ga, gd = _int_components(g)
    n = len(fa) + len(ga) - 1
    acc = [[0, 0, 0, 0] for _ in range(n)]
    for i, (a1, b1, c1, d1) in enumerate(fa):
        if not (a1 or b1 or c1 or d1):
            continue
        for k, (a2, b2, c2, d2) in enumerate(ga):
            t = acc[i + k]
            t[0] += a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
            t[1] += a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
            t[2] += a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
            t[3] += a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
    den = fd * gd
    return [Quaternion._raw(mpq(t[0], den), mpq(t[1], den), mpq(t[2], den),
                            mpq(t[3], den), True) for t in acc]


def star_mul(f: QPoly, g: QPoly) -> QPoly:
    """(f*g) with coefficients c_n = sum_k a_k b_{n-k}."""
    f, g = QPoly.coerce(f), QPoly.coerce(g)
    if f.is_zero() or g.is_zero():
        return QPoly()
    m = f.min_degree + g.min_degree
    if f.exact and g.exact:
        return QPoly(_convolve_exact(f, g), m)
    fc = [c.to_float() for c in f.coeffs]
    gc = [c.to_float() for c in g.coeffs]
    n = len(fc) + len(gc) - 1
    acc = [[0.0, 0.0, 0.0, 0.0] for _ in range(n)]
    for i, p in enumerate(fc):
        a1, b1, c1, d1 = p.w, p.x, p.y, p.z
        for k, q in enumerate(gc):
            a2, b2, c2, d2 = q.w, q.x, q.y, q.z
            t = acc[i + k]
            t[0] += a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
            t[1] += a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
            t[2] += a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
            t[3] += a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
    return QPoly([Quaternion._raw(t[0], t[1], t[2], t[3], False) for t in acc], m)


def star_pow(f: QPoly, n: int) -> QPoly:
    if n < 0:
        raise ValueError("negative *-powers are not polynomials; use star_inverse")
    one = Quaternion(1) if f.exact else Quaternion(1.0)
    result = QPoly([one])
    base = f
    while n:
        if n & 1:
            result = star_mul(result, base)
        n >>= 1
        if n:
            base = star_mul(base, base)
    return result


# conjugation and decompositions ------------------------------------------------

def regular_conjugate(f: QPoly) -> QPoly:
    f = QPoly.coerce(f)
    return QPoly([c.conj() for c in f.coeffs], f.min_degree)


def symmetrization(f: QPoly) -> QPoly:
    """f^s = f * f^c; every coefficient is real."""
    f = QPoly.coerce(f)
    if f.is_zero():
        return QPoly()
    fs = star_mul(f, regular_conjugate(f))
    # imaginary parts cancel identically; drop float round-off explicitly
    return QPoly([Quaternion(c.w) for c in fs.coeffs], fs.min_degree)


def scalar_vector_split(f: QPoly) -> tuple:
    """(f_0, f_v) with f_0 = (f + f^c)/2 real and f_v purely imaginary."""
    f = QPoly.coerce(f)
    f0 = QPoly([Quaternion(c.w) for c in f.coeffs], f.min_degree)
    fv = QPoly([c.imag() for c in f.coeffs], f.min_degree)
    return f0, fv


def component_decompose(f: QPoly) -> tuple:
    """(f_0, f_1, f_2, f_3), real-coefficient, with f = f_0 + f_1 i + f_2 j + f_3 k."""
    f = QPoly.coerce(f)
    out = []
    for idx in range(4):
        out.append(QPoly([Quaternion(c.components()[idx]) for c in f.coeffs],
                         f.min_degree))
    return tuple(out)


def recompose(f0: QPoly, f1: QPoly, f2: QPoly, f3: QPoly) -> QPoly:
    from .quat import I, J, K
    return (QPoly.coerce(f0) + star_mul(QPoly.coerce(f1), QPoly.constant(I))
            + star_mul(QPoly.coerce(f2), QPoly.constant(J))
            + star_mul(QPoly.coerce(f3), QPoly.constant(K)))


# evaluation ------------------------------------------------------------------

def evaluate(f: QPoly, q) -> Quaternion:
    """f(q) = sum q^n a_n (powers of q on the left of each coefficient)."""
    f = QPoly.coerce(f)
    q = Quaternion.coerce(q)
    exact = q.exact and f.exact
    if not exact:
        q = q.to_float()
    if f.is_zero():
        return _zero_like(exact)
    if f.min_degree < 0 and q.is_zero():
        raise PoleAtZero("Laurent polynomial evaluated at 0")
    acc = f.coeffs[-1] if exact else f.coeffs[-1].to_float()
    for c in reversed(f.coeffs[:-1]):
        acc = qmul(q, acc) + c
    m = f.min_degree
    if m > 0:
        acc = qmul(_qpow(q, m), acc)
    elif m < 0:
        acc = qmul(_qpow(q.inverse(), -m), acc)
    return acc


def _qpow(q: Quaternion, n: int) -> Quaternion:
    result = Quaternion(1) if q.exact else Quaternion(1.0)
    base = q
    while n:
        if n & 1:
            result = qmul(result, base)
        n >>= 1
        if n:
            base = qmul(base, base)
    return result


def _cpow(x, y, n: int):
    """(x + iota y)^n as a pair of real scalars."""
    if n < 0:
        d = x * x + y * y
        x, y, n = x / d, -y / d, -n
    rx, ry = (mpq(1), mpq(0)) if is_exact(x) and is_exact(y) else (1.0, 0.0)
    bx, by = x, y
    while n:
        if n & 1:
            rx, ry = rx * bx - ry * by, rx * by + ry * bx
        n >>= 1
        if n:
            bx, by = bx * bx - by * by, 2 * bx * by
    return rx, ry


def stem_evaluate(f: QPoly, x, y, J) -> Quaternion:
    """phi_J(F(x + iota y)) where F = F1 + iota F2 is the stem of f.

    The stem of sum q^n a_n is sum z^n a_n with z complex; its real and
    iota parts give F1, F2 and the slice function is F1 + J F2.
    """
    f = QPoly.coerce(f)
    J = Quaternion.coerce(J)
    if not is_unit_imaginary(J, FLOAT_UNIT_TOL):
        raise NotUnitImaginary(f"{J!r} does not square to -1")
    x, y = scalars.coerce(x), scalars.coerce(y)
    exact = is_exact(x) and is_exact(y) and J.exact and f.exact
    if not exact:
        x, y, J = float(x), float(y), J.to_float()
    if f.min_degree < 0 and x == 0 and y == 0:
        raise PoleAtZero("Laurent polynomial evaluated at 0")
    F1, F2 = stem_components(f, x, y)
    return F1 + qmul(J, F2)


def stem_components(f: QPoly, x, y) -> tuple:
    """(F1, F2) with f(x + Jy) = F1 + J F2 for every unit imaginary J."""
    f = QPoly.coerce(f)
    x, y = scalars.coerce(x), scalars.coerce(y)
    exact = is_exact(x) and is_exact(y) and f.exact
    if not exact:
        x, y = float(x), float(y)
    F1 = _zero_like(exact)
    F2 = _zero_like(exact)
    for n, a in f.terms():
        u, v = _cpow(x, y, n)
        F1 = F1 + a.scale(u)
        F2 = F2 + a.scale(v)
    return F1, F2


def sphere_sup(f: QPoly, q) -> float:
    """max |f| over the sphere x + y S through q.

    |F1 + J F2|^2 = |F1|^2 + |F2|^2 + 2 <Im(F1 conj F2), J>, largest for J
    along Im(F1 conj F2).
    """
    q = Quaternion.coerce(q)
    y2 = q.imag_norm2()
    y = math.sqrt(float(y2))
    F1, F2 = stem_components(f, float(q.w), y)
    cross = abs(qmul(F1, F2.conj()).imag())
    return math.sqrt(max(0.0, float(F1.norm2() + F2.norm2()) + 2 * cross))


# vectorial classes -------------------------------------------------------------

@dataclass(frozen=True)
class VectorClassTag:
    """A constant unit imaginary direction v, or ``None`` for the real class."""

    v: Optional[Quaternion] = None

    def __post_init__(self):
        if self.v is not None:
            v = Quaternion.coerce(self.v)
            if not is_unit_imaginary(v):
                raise NotUnitImaginary(f"class tag {v!r} is not a unit imaginary")
            object.__setattr__(self, "v", v)

    @property
    def is_zero(self) -> bool:
        return self.v is None


def _coeff_in_plane(c: Quaternion, v: Quaternion, tol: float) -> bool:
    # c lies in span{1, v} iff its imaginary part is parallel to v
    cx, cy, cz = c.x, c.y, c.z
    vx, vy, vz = v.x, v.y, v.z
    cross = (cy * vz - cz * vy, cz * vx - cx * vz, cx * vy - cy * vx)
    if c.exact and v.exact:
        return all(t == 0 for t in cross)
    return sum(float(t) ** 2 for t in cross) <= tol * tol


def in_vector_class(f: QPoly, tag: VectorClassTag, tol: float = 1e-12) -> bool:
    f = QPoly.coerce(f)
    if not isinstance(tag, VectorClassTag):
        tag = VectorClassTag(tag)
    if tag.is_zero:
        return f.is_slice_preserving(0.0 if f.exact else tol)
    return all(_coeff_in_plane(c, tag.v, tol) for c in f.coeffs)


def vector_class_parts(f: QPoly, tag: VectorClassTag) -> tuple:
    """(f_0, f_1), real-coefficient, with f = f_0 + f_1 v."""
    f0, fv = scalar_vector_split(f)
    v = tag.v
    n2 = v.norm2()
    # component of the vector part along v: <c, v> / |v|^2
    f1 = QPoly([Quaternion((c.x * v.x + c.y * v.y + c.z * v.z) / n2) for c in fv.coeffs],
               fv.min_degree)
    return f0, f1


# division ---------------------------------------------------------------------

def left_divmod_linear(f: QPoly, q0) -> tuple:
    """Return (g, r) with f = (q - q0) * g + r and r = f(q0) a constant.

    Requires an ordinary polynomial.
    """
    f = QPoly.coerce(f)
    q0 = Quaternion.coerce(q0)
    if f.min_degree < 0:
        raise NotPolynomial("division by (q - q0) needs min_degree >= 0")
    if not (f.exact and q0.exact):
        q0 = q0.to_float()
    if f.is_zero():
        return QPoly(), _zero_like(q0.exact)
    h = f.dense(0, f.degree)
    if not (f.exact and q0.exact):
        h = [c.to_float() for c in h]
    N = len(h) - 1
    if N == 0:
        return QPoly(), h[0]
    # (q - q0)*g has coefficients g_{n-1} - q0 g_n
    g = [None] * N
    g[N - 1] = h[N]
    for n in range(N - 1, 0, -1):
        g[n - 1] = h[n] + qmul(q0, g[n])
    r = h[0] + qmul(q0, g[0])
    return QPoly(g), r


def divmod_real(f: QPoly, d: Sequence) -> tuple:
    """Divide by a real polynomial d (coefficients low to high, as scalars).

    Returns (quotient, remainder) with f = d * quotient + remainder and
    deg remainder < deg d. ``f`` must be an ordinary polynomial.
    """
    f = QPoly.coerce(f)
    if f.min_degree < 0:
        raise NotPolynomial("real division needs min_degree >= 0")
    d = list(d)
    while d and d[-1] == 0:
        d.pop()
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    dn = len(d) - 1
    if f.is_zero():
        return QPoly(), QPoly()
    exact = f.exact and all(is_exact(scalars.coerce(t)) for t in d)
    d = [scalars.coerce(t) if exact else float(t) for t in d]
    rem = f.dense(0, f.degree)
    if not exact:
        rem = [c.to_float() for c in rem]
    lead_inv = 1 / d[-1] if exact else 1.0 / d[-1]
    nq = len(rem) - dn
    if nq <= 0:
        return QPoly(), QPoly(rem)
    quot = [None] * nq
    for k in range(nq - 1, -1, -1):
        c = rem[k + dn].scale(lead_inv)
        quot[k] = c
        if c.is_zero():
            continue
        for t in range(dn + 1):
            if d[t] != 0:
                rem[k + t] = rem[k + t] - c.scale(d[t])
    return QPoly(quot), QPoly(rem[:dn])


def real_poly(values: Sequence) -> QPoly:
    return QPoly([Quaternion(v) for v in values])


def real_coefficients(f: QPoly) -> list:
    """Real coefficients low to high of an ordinary slice-preserving polynomial."""
    f = QPoly.coerce(f)
    if f.min_degree < 0:
        raise NotPolynomial("expected an ordinary polynomial")
    return [c.w for c in f.dense(0, f.degree)] if not f.is_zero() else []
