"""Zero sets of polynomials, functions with prescribed zeros, principal divisors.

Zeros of f lie over the roots of the real polynomial f^s. A real root x of
f^s with multiplicity 2m is a real zero of order m. A conjugate pair
x0 +- i y0 gives the sphere S(x0, y0); dividing f by the real quadratic
(q - x0)^2 + y0^2 as often as possible yields the spherical multiplicity,
and a nonzero remainder a + q b pins down the single isolated zero
-a b^{-1} on that sphere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import (ConflictingNodes, InvalidSpec, NotPolynomial,
                     OverlappingZeroPole, ZeroFunction)
from .quat import Quaternion, Sphere, qmul, symmetrize_point
from .scalars import is_exact, mpq
from .semiregular import SemiRegularFn
from .starpoly import (QPoly, divmod_real, evaluate, regular_conjugate,
                       star_mul, star_pow, symmetrization)

CLUSTER_TOL = 1e-8

Node = Union[Quaternion, Sphere]


class ZeroKind(str, enum.Enum):
    REAL_POINT = "RealPoint"
    ISOLATED_POINT = "IsolatedPoint"
    SPHERICAL_ZERO = "SphericalZero"


@dataclass(frozen=True)
class ZeroRecord:
    kind: ZeroKind
    location: Node
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity <= 0:
            raise ValueError("multiplicity must be positive")
        if self.kind is ZeroKind.SPHERICAL_ZERO and self.multiplicity % 2:
            raise ValueError("spherical multiplicities are even")


def node_kind(node: Node) -> str:
    if isinstance(node, Sphere):
        return "real" if node.degenerate else "sphere"
    node = Quaternion.coerce(node)
    return "real" if node.is_real() else "point"


def _canonical_node(node) -> Node:
    if isinstance(node, Sphere):
        if node.degenerate:
            return Quaternion(node.a)
        return node
    return Quaternion.coerce(node)


class Divisor:
    """A finite list of (node, nonzero order) pairs.

    Nodes are real points, nonreal points (Quaternion) or spheres. Nodes are
    pairwise distinct, a sphere carries at most one nonreal point, and sphere
    orders are even.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable = ()):
        items = []
        for node, order in entries:
            order = int(order)
            if order == 0:
                continue
            items.append((_canonical_node(node), order))
        object.__setattr__(self, "entries", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def positive(self) -> "Divisor":
        return Divisor((n, o) for n, o in self.entries if o > 0)

    def negative(self) -> "Divisor":
        """Pole part with orders made positive."""
        return Divisor((n, -o) for n, o in self.entries if o < 0)

    def degree(self) -> int:
        return sum(o for _, o in self.entries)

    def validate(self, allow_mixed_signs: bool = True) -> "Divisor":
        seen = []
        point_spheres = {}
        sphere_orders = {}
        for node, order in self.entries:
            for other, oorder in seen:
                if _same_node(node, other):
                    if (order > 0) != (oorder > 0):
                        raise OverlappingZeroPole(f"{node!r} is both a zero and a pole")
                    raise InvalidSpec(f"duplicate node {node!r}")
            seen.append((node, order))
            kind = node_kind(node)
            if kind == "sphere":
                if order % 2:
                    raise InvalidSpec(f"sphere {node!r} needs an even order, got {order}")
                sphere_orders[_sphere_key(node)] = order
            elif kind == "point":
                key = _sphere_key(symmetrize_point(node))
                if key in point_spheres:
                    raise ConflictingNodes(
                        f"{node!r} and {point_spheres[key]!r} lie on the same sphere")
                point_spheres[key] = node
        for key, pnode in point_spheres.items():
            if key in sphere_orders:
                porder = dict((n, o) for n, o in self.entries if n is pnode)[pnode]
                if (porder > 0) != (sphere_orders[key] > 0):
                    raise OverlappingZeroPole(
                        f"{pnode!r} and its sphere carry orders of opposite sign")
        return self

    def as_set(self) -> frozenset:
        return frozenset(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return _entries_match(self.entries, other.entries)

    def __hash__(self):
        return hash(frozenset(o for _, o in self.entries))

    def __repr__(self):
        return f"Divisor({list(self.entries)!r})"


def _sphere_key(s: Sphere):
    if s.exact:
        return (s.a, s.r2)
    return (round(float(s.a), 7), round(float(s.r), 7))


def _same_node(a: Node, b: Node, tol: float = 1e-9) -> bool:
    if isinstance(a, Sphere) != isinstance(b, Sphere):
        return False
    if isinstance(a, Sphere):
        return a == b
    if a.exact and b.exact:
        return a == b
    return a.close_to(b, tol)


def _entries_match(e1, e2, tol: float = 1e-7) -> bool:
    if len(e1) != len(e2):
        return False
    remaining = list(e2)
    for node, order in e1:
        for idx, (n2, o2) in enumerate(remaining):
            if o2 == order and _same_node(node, n2, tol):
                del remaining[idx]
                break
        else:
            return False
    return True


def zeros_to_divisor(records: Iterable[ZeroRecord]) -> Divisor:
    return Divisor((r.location, r.multiplicity) for r in records)


# root finding of the real polynomial f^s ---------------------------------------------

def _real_roots_exact(coeffs: list) -> tuple:
    """Factor a rational polynomial; returns (real roots, quadratics, leftovers).

    real roots: [(root, multiplicity)]; quadratics: [((x0, y0^2), multiplicity)]
    for irreducible quadratics; leftovers: [(coeffs, multiplicity)] for
    irreducible factors of degree > 2, handled numerically by the caller.
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                       for c in reversed(coeffs)], x, domain="QQ")
    _, factors = poly.factor_list()
    real, quads, rest = [], [], []
    for fac, mult in factors:
        c = [mpq(int(t.p), int(t.q)) for t in reversed(fac.all_coeffs())]
        deg = len(c) - 1
        if deg == 1:
            real.append((-c[0] / c[1], mult))
        elif deg == 2:
            a, b, cc = c[2], c[1], c[0]
            disc = b * b - 4 * a * cc
            if disc < 0:
                x0 = -b / (2 * a)
                quads.append(((x0, cc / a - x0 * x0), mult))
            else:
                rest.append((c, mult))
        else:
            rest.append((c, mult))
    return real, quads, rest


def _cluster(values, tol: float) -> list:
    """Group complex roots; clusters of size m merge within tol^(1/m)."""
    clusters = [[complex(v)] for v in values]
    changed = True
    while changed:
        changed = False
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                ca, cb = clusters[a], clusters[b]
                m = len(ca) + len(cb)
                ma, mb = np.mean(ca), np.mean(cb)
                scale = max(1.0, abs(ma), abs(mb))
                if abs(ma - mb) <= scale * tol ** (1.0 / m):
                    clusters[a] = ca + cb
                    del clusters[b]
                    changed = True
                    break
            if changed:
                break
    return [(complex(np.mean(c)), len(c)) for c in clusters]


def _roots_float(coeffs: list, tol: float) -> tuple:
    c = [float(t) for t in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return [], []
    roots = np.roots(list(reversed(c)))
    clusters = _cluster(roots, tol)
    real, spheres = [], []
    for z, m in clusters:
        scale = max(1.0, abs(z))
        if abs(z.imag) <= scale * tol ** (1.0 / (m + 1)):
            real.append((z.real, m))
        elif z.imag > 0:
            spheres.append(((z.real, z.imag * z.imag), m))
    return real, spheres


def _multiplicity_real(f: QPoly, x, tol: float) -> tuple:
    """Largest m with (q - x)^m dividing f; returns (m, cofactor)."""
    m = 0
    lin = [-x, mpq(1) if is_exact(x) else 1.0]
    while not f.is_zero():
        quo, rem = divmod_real(f, lin)
        if not _negligible(rem, f, tol):
            break
        f = quo
        m += 1
    return m, f


def _negligible(rem: QPoly, ref: QPoly, tol: float) -> bool:
    if rem.exact:
        return rem.is_zero()
    scale = max((abs(c) for c in ref.coeffs), default=1.0)
    return all(abs(c) <= tol * max(1.0, scale) for c in rem.coeffs)


def zero_set(f: QPoly, tol: float = CLUSTER_TOL) -> list:
    """Zeros of an ordinary polynomial as ZeroRecords."""
    f = QPoly.coerce(f)
    if f.is_zero():
        raise ZeroFunction("the zero polynomial vanishes everywhere")
    if f.min_degree < 0:
        raise NotPolynomial("zero_set expects min_degree >= 0")
    fs = symmetrization(f)
    coeffs = [c.w for c in fs.dense(0, fs.degree)]
    records = []
    if f.exact:
        real, quads, rest = _real_roots_exact(coeffs)
        for c, mult in rest:
            r2, q2 = _roots_float(c, tol)
            real += [(x, m * mult) for x, m in r2]
            quads += [(s, m * mult) for s, m in q2]
    else:
        real, quads = _roots_float(coeffs, tol)
    for x, mult in real:
        m, _ = _multiplicity_real(f, x, tol)
        if m == 0:
            m = mult // 2
        records.append(ZeroRecord(ZeroKind.REAL_POINT, Quaternion(x), m))
    for (x0, y2), mult in quads:
        sphere = Sphere(x0, r2=y2)
        records.extend(_classify_sphere(f, sphere, mult, tol))
    return sorted(records, key=_record_order)


def _record_order(r: ZeroRecord):
    loc = r.location
    if isinstance(loc, Sphere):
        return (float(loc.a), float(loc.r), 1)
    return (float(loc.w), abs(loc.imag()), 0)


def _classify_sphere(f: QPoly, sphere: Sphere, mult: int, tol: float) -> list:
    quad = sphere.quadratic()
    if not f.exact:
        quad = [float(t) for t in quad]
    k = 0
    h = f
    while True:
        quo, rem = divmod_real(h, quad)
        if _negligible(rem, h, tol):
            h = quo
            k += 1
        else:
            break
    out = []
    if k:
        out.append(ZeroRecord(ZeroKind.SPHERICAL_ZERO, sphere, 2 * k))
    carried = mult - 2 * k
    if carried > 0:
        a, b = rem.coeff(0), rem.coeff(1)
        if b.is_zero(0.0 if rem.exact else tol):
            raise ArithmeticError("f^s vanishes on a sphere free of zeros of f")
        q0 = -qmul(a, b.inverse())
        out.append(ZeroRecord(ZeroKind.ISOLATED_POINT, q0, carried))
    return out


# functions with prescribed zeros ----------------------------------------------------

def _point_factor(prefix: QPoly, z: Quaternion, order: int) -> QPoly:
    """(q - c)^{*order} with c chosen so that prefix * (q - c) vanishes at z.

    If prefix(z) != 0 then (prefix * g)(z) = prefix(z) g(prefix(z)^{-1} z prefix(z)),
    so c is z conjugated by prefix(z).
    """
    p = evaluate(prefix, z)
    if p.is_zero():
        raise ConflictingNodes(f"{z!r} is already a zero of the partial product")
    c = qmul(qmul(p.inverse(), z), p)
    return star_pow(QPoly.linear(c), order)


def _real_factor(node: Node, order: int, exact: bool) -> QPoly:
    one = mpq(1) if exact else 1.0
    if isinstance(node, Sphere):
        quad = node.quadratic()
        base = QPoly([Quaternion(t) for t in quad])
        return star_pow(base, order // 2)
    x = Quaternion.coerce(node).w
    return star_pow(QPoly([Quaternion(-x), Quaternion(one)]), order)


def build_with_zeros(spec) -> QPoly:
    """Polynomial whose zero set is exactly the given positive divisor."""
    spec = spec if isinstance(spec, Divisor) else Divisor(spec)
    spec.validate()
    if any(o < 0 for _, o in spec):
        raise InvalidSpec("build_with_zeros takes positive orders only")
    exact = all(_node_exact(n) for n, _ in spec)
    one = Quaternion(1) if exact else Quaternion(1.0)
    f = QPoly([one])
    # nonreal points first: real-coefficient factors commute and would
    # otherwise vanish at points on their spheres
    for node, order in spec:
        if node_kind(node) == "point":
            f = star_mul(f, _point_factor(f, node, order))
    for node, order in spec:
        if node_kind(node) != "point":
            f = star_mul(f, _real_factor(node, order, exact))
    return f


def _node_exact(node: Node) -> bool:
    return node.exact


def divisor_build(spec) -> SemiRegularFn:
    """Semiregular function with the prescribed zeros and poles."""
    spec = spec if isinstance(spec, Divisor) else Divisor(spec)
    spec.validate()
    exact = all(_node_exact(n) for n, _ in spec)
    numerator = build_with_zeros(spec.positive())
    if not exact:
        numerator = numerator.to_float()
    poles = spec.negative()
    one = Quaternion(1) if exact else Quaternion(1.0)
    # isolated poles: g has zeros there, and N * g^{-*} = (N * g^c) / g^s
    g = QPoly([one])
    denominator = QPoly([one])
    for node, order in poles:
        if node_kind(node) == "point":
            g = star_mul(g, _point_factor(g, node, order))
        else:
            denominator = star_mul(denominator, _real_factor(node, order, exact))
    numerator = star_mul(numerator, regular_conjugate(g))
    denominator = star_mul(denominator, symmetrization(g))
    return SemiRegularFn(numerator, denominator)


def divisor_of(f) -> Divisor:
    """Zero/pole structure of a semiregular function (or polynomial).

    On a sphere where the denominator has the factor s^mu and the numerator
    has an isolated zero of carried multiplicity m, the pole sits at the
    isolated zero of the conjugated numerator with order m, and the rest of
    the denominator gives a spherical pole of order 2(mu - m).
    """
    if isinstance(f, QPoly):
        f = SemiRegularFn(f)
    num, den = f.numerator, f.denominator
    entries = []
    num_records = zero_set(num) if num.min_degree >= 0 else None
    if num_records is None:
        raise NotPolynomial("numerator carries a pole at 0; divisor_of needs min_degree >= 0")
    den_records = zero_set(den) if den.degree > 0 else []
    conj_records = None
    pole_spheres = {}
    for rec in den_records:
        if rec.kind is ZeroKind.REAL_POINT:
            entries.append((rec.location, -rec.multiplicity))
        else:
            loc = rec.location if isinstance(rec.location, Sphere) else symmetrize_point(rec.location)
            pole_spheres[_sphere_key(loc)] = (loc, rec.multiplicity // 2)
    for rec in num_records:
        loc = rec.location
        key = _sphere_key(loc if isinstance(loc, Sphere) else symmetrize_point(loc))
        if rec.kind is ZeroKind.ISOLATED_POINT and key in pole_spheres:
            sphere, mu = pole_spheres.pop(key)
            if conj_records is None:
                conj_records = zero_set(regular_conjugate(num))
            pole = next(r for r in conj_records
                        if r.kind is ZeroKind.ISOLATED_POINT
                        and _sphere_key(symmetrize_point(r.location)) == key)
            entries.append((pole.location, -rec.multiplicity))
            rest = 2 * mu - 2 * rec.multiplicity
            if rest < 0:
                raise ArithmeticError("inconsistent zero/pole data on a sphere")
            if rest:
                entries.append((sphere, -rest))
        else:
            entries.append((loc, rec.multiplicity))
    for sphere, mu in pole_spheres.values():
        entries.append((sphere, -2 * mu))
    return Divisor(entries)
