"""Taylor jets, spherical jets and jet interpolation over finite node sets.

Jet extraction is right-H-linear in the coefficients of f (f a -> jets(f) a
for a constant a), so interpolation is a right-linear system whose columns
are the jets of the monomials q^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ._linalg import solve_right_linear
from .errors import (AnchorOffSphere, ConflictingNodes, InterpolationFailed,
                     InvalidSpec, NotPolynomial)
from .quat import Quaternion, Sphere, qmul, symmetrize_point
from .starpoly import QPoly, divmod_real, left_divmod_linear, star_mul
from .zeros import _sphere_key, node_kind


@dataclass(frozen=True)
class TaylorJet:
    """A_0..A_l with f = sum (q - center)^{*n} A_n + higher order terms."""

    center: Quaternion
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "center", Quaternion.coerce(self.center))
        object.__setattr__(self, "coeffs", tuple(Quaternion.coerce(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def polynomial(self) -> QPoly:
        """sum_{n<=l} (q - center)^{*n} A_n."""
        lin = QPoly.linear(self.center)
        total, power = QPoly(), QPoly.constant(1)
        for a in self.coeffs:
            total = total + star_mul(power, QPoly.constant(a))
            power = star_mul(power, lin)
        return total

    def matches(self, other: "TaylorJet", tol: float = 0.0) -> bool:
        if len(self.coeffs) != len(other.coeffs):
            return False
        if tol == 0.0:
            return self.coeffs == other.coeffs
        return all(a.close_to(b, tol) for a, b in zip(self.coeffs, other.coeffs))


@dataclass(frozen=True)
class SphericalJet:
    """A_0..A_{2l+1} of the expansion sum s^n (A_{2n} + (q - anchor) A_{2n+1}).

    With no anchor the basis is (1, q) and a valid jet on the sphere has all
    odd coefficients equal to zero.
    """

    sphere: Sphere
    coeffs: tuple
    anchor: Optional[Quaternion] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Quaternion.coerce(c) for c in self.coeffs))
        if self.anchor is not None:
            object.__setattr__(self, "anchor", Quaternion.coerce(self.anchor))
        if len(self.coeffs) % 2:
            raise InvalidSpec("a spherical jet has an even number of coefficients A_0..A_{2l+1}")

    @property
    def order(self) -> int:
        """l, for a jet of order 2l + 1."""
        return len(self.coeffs) // 2 - 1

    def spherical_multiplicity(self) -> Optional[int]:
        """2m for the first nonzero A_{2m} or A_{2m+1}; None if all vanish."""
        for idx, a in enumerate(self.coeffs):
            if not a.is_zero():
                return 2 * (idx // 2)
        return None

    def polynomial(self) -> QPoly:
        s = QPoly([Quaternion(t) for t in self.sphere.quadratic()])
        base = QPoly.linear(self.anchor) if self.anchor is not None else QPoly.monomial(1)
        total, power = QPoly(), QPoly.constant(1)
        for n in range(len(self.coeffs) // 2):
            even, odd = self.coeffs[2 * n], self.coeffs[2 * n + 1]
            part = QPoly.constant(even) + star_mul(base, QPoly.constant(odd))
            total = total + star_mul(power, part)
            power = star_mul(power, s)
        return total

    def matches(self, other: "SphericalJet", tol: float = 0.0) -> bool:
        if len(self.coeffs) != len(other.coeffs):
            return False
        if tol == 0.0:
            return self.coeffs == other.coeffs
        return all(a.close_to(b, tol) for a, b in zip(self.coeffs, other.coeffs))


Jet = Union[TaylorJet, SphericalJet]


@dataclass(frozen=True)
class JetSpec:
    """(node, jet) pairs: points carry Taylor jets, spheres spherical jets."""

    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def condition_count(self) -> int:
        return sum(len(jet.coeffs) for _, jet in self.entries)

    def validate(self) -> "JetSpec":
        spheres = {}
        points = []
        for node, jet in self.entries:
            kind = node_kind(node)
            if kind == "sphere":
                if not isinstance(jet, SphericalJet) or not (jet.sphere == node):
                    raise InvalidSpec(f"sphere node {node!r} needs a spherical jet on it")
                if jet.anchor is not None and not node.contains(jet.anchor):
                    raise AnchorOffSphere(f"anchor {jet.anchor!r} is not on {node!r}")
                if jet.anchor is None and any(not a.is_zero() for a in jet.coeffs[1::2]):
                    raise InvalidSpec("a jet on a sphere without anchor has zero odd coefficients")
                key = _sphere_key(node)
            else:
                if not isinstance(jet, TaylorJet):
                    raise InvalidSpec(f"point node {node!r} needs a Taylor jet")
                if not (jet.center == Quaternion.coerce(node)):
                    raise InvalidSpec("Taylor jet centre differs from its node")
                if kind == "real":
                    if any(_same_point(node, p) for p in points):
                        raise InvalidSpec(f"duplicate node {node!r}")
                    points.append(node)
                    continue
                key = _sphere_key(symmetrize_point(node))
            if key in spheres:
                raise ConflictingNodes(
                    f"{node!r} and {spheres[key]!r} share the sphere {key!r}")
            spheres[key] = node
        return self


def _same_point(a, b) -> bool:
    a, b = Quaternion.coerce(a), Quaternion.coerce(b)
    return a == b if a.exact and b.exact else a.close_to(b, 1e-12)


# extraction ------------------------------------------------------------------

def taylor_jet(f: QPoly, q0, order: int) -> TaylorJet:
    """A_n = value at q0 of the n-th quotient by (q - q0)."""
    f = QPoly.coerce(f)
    if order < 0:
        raise ValueError("order must be nonnegative")
    if f.min_degree < 0:
        raise NotPolynomial("taylor_jet expects an ordinary polynomial")
    q0 = Quaternion.coerce(q0)
    coeffs = []
    for _ in range(order + 1):
        f, r = left_divmod_linear(f, q0)
        coeffs.append(r)
    return TaylorJet(q0, tuple(coeffs))


def spherical_expand(f: QPoly, sphere: Sphere, q0=None, order: int = 0) -> SphericalJet:
    """Coefficients A_0..A_{2 order + 1} of the spherical expansion at q0."""
    f = QPoly.coerce(f)
    if f.min_degree < 0:
        raise NotPolynomial("spherical_expand expects an ordinary polynomial")
    if sphere.degenerate:
        raise InvalidSpec("spherical expansions need a sphere of positive radius")
    if q0 is not None:
        q0 = Quaternion.coerce(q0)
        if not sphere.contains(q0):
            raise AnchorOffSphere(f"{q0!r} is not on {sphere!r}")
    quad = sphere.quadratic()
    if not (f.exact and sphere.exact):
        quad = [float(t) for t in quad]
    coeffs = []
    for _ in range(order + 1):
        f, rem = divmod_real(f, quad)
        r0, r1 = rem.coeff(0), rem.coeff(1)
        if q0 is not None:
            # r0 + q r1 = (r0 + q0 r1) + (q - q0) r1
            coeffs.extend([r0 + qmul(q0, r1), r1])
        else:
            coeffs.extend([r0, r1])
    return SphericalJet(sphere, tuple(coeffs), q0)


def extract_jet(f: QPoly, node, like: Jet) -> Jet:
    """Jet of f at ``node`` with the same shape as ``like``."""
    if isinstance(like, SphericalJet):
        return spherical_expand(f, like.sphere, like.anchor, like.order)
    return taylor_jet(f, node, like.order)


# interpolation -----------------------------------------------------------------

def _monomial_columns(spec: JetSpec, degree: int, exact: bool) -> list:
    cols = []
    one = 1 if exact else 1.0
    for n in range(degree + 1):
        mono = QPoly.monomial(n, one)
        col = []
        for node, jet in spec:
            col.extend(extract_jet(mono, node, jet).coeffs)
        cols.append(col)
    return cols


def jet_interpolate(spec: JetSpec, extra_degree: int = 4) -> QPoly:
    """Lowest-degree polynomial reproducing every jet in ``spec``."""
    spec = spec if isinstance(spec, JetSpec) else JetSpec(tuple(spec))
    spec.validate()
    if not spec.entries:
        return QPoly()
    exact = all(_jet_exact(node, jet) for node, jet in spec)
    rhs = []
    for _, jet in spec:
        rhs.extend(c if exact else c.to_float() for c in jet.coeffs)
    n_cond = len(rhs)
    d_max = n_cond - 1 + extra_degree
    cols = _monomial_columns(spec, d_max, exact)
    for d in range(0, d_max + 1):
        M = [[cols[n][r] for n in range(d + 1)] for r in range(n_cond)]
        x = solve_right_linear(M, rhs)
        if x is not None:
            return QPoly(x)
    raise InterpolationFailed(f"no interpolant up to degree {d_max}")


def _jet_exact(node, jet) -> bool:
    vals = list(jet.coeffs)
    if isinstance(jet, SphericalJet):
        ok = jet.sphere.exact and (jet.anchor is None or jet.anchor.exact)
    else:
        ok = jet.center.exact
    return ok and all(c.exact for c in vals)


def hermite_local(node, jet: Jet) -> QPoly:
    """Local polynomial P with the prescribed jet at a single node."""
    return jet_interpolate(JetSpec(((node, jet),)))


def jet_zero_orders(spec: JetSpec) -> list:
    """Zero prescription with multiplicities exceeding every jet order.

    A function g with these zeros satisfies jets(P + g * v) = jets(P) for
    any v, the gluing step that combines local polynomials.
    """
    out = []
    for node, jet in spec:
        if isinstance(jet, SphericalJet):
            # s^{l+1} divides g, anchored or not
            out.append((jet.sphere, 2 * (jet.order + 1)))
        else:
            out.append((node, jet.order + 1))
    return out
