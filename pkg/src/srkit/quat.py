"""Quaternion arithmetic and the slice/sphere geometry of H."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import scalars
from .errors import RealArgument
from .scalars import is_exact, mpq

FLOAT_UNIT_TOL = 1e-12
SPHERE_TOL = 1e-9


class Quaternion:
    """w + x i + y j + z k over either scalar backend.

    Instances are immutable. Components are all mpq (exact) or all float.
    """

    __slots__ = ("w", "x", "y", "z", "exact")

    def __init__(self, w=0, x=0, y=0, z=0):
        comps = [scalars.coerce(c) for c in (w, x, y, z)]
        exact = all(is_exact(c) for c in comps)
        if not exact:
            comps = [float(c) for c in comps]
        object.__setattr__(self, "w", comps[0])
        object.__setattr__(self, "x", comps[1])
        object.__setattr__(self, "y", comps[2])
        object.__setattr__(self, "z", comps[3])
        object.__setattr__(self, "exact", exact)

    @classmethod
    def _raw(cls, w, x, y, z, exact):
        q = object.__new__(cls)
        object.__setattr__(q, "w", w)
        object.__setattr__(q, "x", x)
        object.__setattr__(q, "y", y)
        object.__setattr__(q, "z", z)
        object.__setattr__(q, "exact", exact)
        return q

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (list, tuple)) and len(value) == 4:
            return cls(*value)
        return cls(value)

    def to_float(self) -> "Quaternion":
        if not self.exact:
            return self
        return Quaternion._raw(float(self.w), float(self.x), float(self.y), float(self.z), False)

    def to_exact(self) -> "Quaternion":
        if self.exact:
            return self
        t = scalars.to_exact
        return Quaternion._raw(t(self.w), t(self.x), t(self.y), t(self.z), True)

    def components(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    # arithmetic -----------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Quaternion):
            if other.exact == self.exact:
                return self, other
            return self.to_float(), other.to_float()
        other = Quaternion(other)
        if other.exact == self.exact:
            return self, other
        return self.to_float(), other.to_float()

    def __add__(self, other):
        a, b = self._other(other)
        return Quaternion._raw(a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z, a.exact)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._other(other)
        return Quaternion._raw(a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z, a.exact)

    def __rsub__(self, other):
        a, b = self._other(other)
        return b - a

    def __neg__(self):
        return Quaternion._raw(-self.w, -self.x, -self.y, -self.z, self.exact)

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            try:
                s = scalars.coerce(other)
            except TypeError:
                return NotImplemented
            return self.scale(s)
        return qmul(self, other)

    def __rmul__(self, other):
        s = scalars.coerce(other)
        return self.scale(s)

    def scale(self, s) -> "Quaternion":
        if type(s) is int:
            s = mpq(s)
        if is_exact(s) and self.exact:
            return Quaternion._raw(self.w * s, self.x * s, self.y * s, self.z * s, True)
        q = self.to_float()
        s = float(s)
        return Quaternion._raw(q.w * s, q.x * s, q.y * s, q.z * s, False)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other.inverse())
        s = scalars.coerce(other)
        if is_exact(s) and self.exact:
            return self.scale(1 / s)
        return self.scale(1.0 / float(s))

    def conj(self) -> "Quaternion":
        return Quaternion._raw(self.w, -self.x, -self.y, -self.z, self.exact)

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.sqrt(float(self.norm2()))

    def inverse(self) -> "Quaternion":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("quaternion inverse of 0")
        return self.conj() / n

    def real(self):
        return self.w

    def imag(self) -> "Quaternion":
        zero = mpq(0) if self.exact else 0.0
        return Quaternion._raw(zero, self.x, self.y, self.z, self.exact)

    def imag_norm2(self):
        return self.x * self.x + self.y * self.y + self.z * self.z

    def is_real(self, tol: float = 0.0) -> bool:
        if self.exact or tol == 0.0:
            return self.x == 0 and self.y == 0 and self.z == 0
        return self.imag_norm2() <= tol * tol

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact or tol == 0.0:
            return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0
        return self.norm2() <= tol * tol

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = Quaternion.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.w == other.w and self.x == other.x
                and self.y == other.y and self.z == other.z)

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def close_to(self, other, tol: float = 1e-9) -> bool:
        return abs(self - Quaternion.coerce(other)) <= tol

    def __repr__(self):
        parts = []
        for c, u in zip(self.components(), ("", "i", "j", "k")):
            if c != 0:
                parts.append(f"{c}{u}" if u else f"{c}")
        return "Quaternion(" + (" + ".join(parts) if parts else "0") + ")"


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p·q."""
    if p.exact != q.exact:
        p, q = p.to_float(), q.to_float()
    a1, b1, c1, d1 = p.w, p.x, p.y, p.z
    a2, b2, c2, d2 = q.w, q.x, q.y, q.z
    return Quaternion._raw(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        p.exact,
    )


def qinv(q: Quaternion) -> Quaternion:
    return q.inverse()


ONE = Quaternion(1)
ZERO = Quaternion(0)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


@dataclass(frozen=True)
class SliceCoords:
    """q = x + I·y with y >= 0; ``I`` is None for real q."""

    x: object
    y: object
    I: Optional[Quaternion]

    def reconstruct(self) -> Quaternion:
        if self.I is None:
            return Quaternion(self.x)
        return self.I * self.y + self.x


def _imag_length(q: Quaternion):
    return scalars.sqrt(q.imag_norm2())


def slice_decompose(q: Quaternion, tol: float = FLOAT_UNIT_TOL) -> SliceCoords:
    q = Quaternion.coerce(q)
    if q.is_real(tol):
        return SliceCoords(q.w, mpq(0) if q.exact else 0.0, None)
    y = _imag_length(q)
    return SliceCoords(q.w, y, q.imag() / y)


def imaginary_unit(q: Quaternion, tol: float = FLOAT_UNIT_TOL) -> Quaternion:
    """Im(q)/|Im(q)|, the unit I with q in the upper half of the slice C_I."""
    q = Quaternion.coerce(q)
    if q.is_real(tol):
        raise RealArgument(f"imaginary unit undefined at real point {q!r}")
    return q.imag() / _imag_length(q)


def is_unit_imaginary(v: Quaternion, tol: float = FLOAT_UNIT_TOL) -> bool:
    v = Quaternion.coerce(v)
    if v.exact:
        return v.w == 0 and v.imag_norm2() == 1
    return abs(v.w) <= tol and abs(v.imag_norm2() - 1.0) <= tol


class Sphere:
    """S(a, r) = {a + r I : I in S}; r = 0 is the real point a.

    The squared radius is kept alongside ``r`` so spheres coming from
    irreducible real quadratics stay exact even when r itself is irrational.
    """

    __slots__ = ("a", "r", "r2")

    def __init__(self, a, r=None, *, r2=None):
        a = scalars.coerce(a)
        if r2 is None:
            if r is None:
                raise TypeError("Sphere needs r or r2")
            r = scalars.coerce(r)
            if r < 0:
                raise ValueError("sphere radius must be nonnegative")
            r2 = r * r
        else:
            r2 = scalars.coerce(r2)
            if r2 < 0:
                raise ValueError("squared radius must be nonnegative")
            if r is None:
                r = scalars.sqrt(r2)
            else:
                r = scalars.coerce(r)
        if not (is_exact(a) and is_exact(r2)):
            a, r, r2 = float(a), float(r), float(r2)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "r2", r2)

    def __setattr__(self, name, value):
        raise AttributeError("Sphere is immutable")

    @property
    def exact(self) -> bool:
        return is_exact(self.a) and is_exact(self.r2)

    @property
    def degenerate(self) -> bool:
        return self.r2 == 0

    def contains(self, q, tol: float = SPHERE_TOL) -> bool:
        q = Quaternion.coerce(q)
        if self.exact and q.exact:
            return q.w == self.a and q.imag_norm2() == self.r2
        return (abs(float(q.w) - float(self.a)) <= tol
                and abs(math.sqrt(float(q.imag_norm2())) - float(self.r)) <= tol)

    def quadratic(self):
        """Coefficients (low to high) of (q - a)^2 + r^2."""
        a = self.a
        return [a * a + self.r2, -2 * a, mpq(1) if self.exact else 1.0]

    def point(self, unit: Quaternion) -> Quaternion:
        return unit * self.r + self.a

    def close_to(self, other: "Sphere", tol: float = SPHERE_TOL) -> bool:
        return (abs(float(self.a) - float(other.a)) <= tol
                and abs(float(self.r) - float(other.r)) <= tol)

    def __eq__(self, other):
        if not isinstance(other, Sphere):
            return NotImplemented
        if self.exact and other.exact:
            return self.a == other.a and self.r2 == other.r2
        return self.close_to(other)

    def __hash__(self):
        return hash((self.a, self.r2))

    def __repr__(self):
        return f"Sphere(a={self.a}, r={self.r})"


def symmetrize_point(q: Quaternion) -> Sphere:
    q = Quaternion.coerce(q)
    return Sphere(q.w, r2=q.imag_norm2())
