"""Real 4x4 (and 2x2 same-class) matrix representations, exp* and log*.

A function f = f_0 + f_1 i + f_2 j + f_3 k is sent to

    [[f_0, -f_1, -f_2, -f_3],
     [f_1,  f_0, -f_3,  f_2],
     [f_2,  f_3,  f_0, -f_1],
     [f_3, -f_2,  f_1,  f_0]]

whose entries are slice-preserving, hence commute. The map turns the
*-product into the matrix product and regular conjugation into transpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .errors import NotInClass, NotPolynomial, OutsideConvergence
from .quat import Quaternion
from .starpoly import (QPoly, VectorClassTag, component_decompose, evaluate,
                       in_vector_class, recompose, regular_conjugate,
                       sphere_sup, star_mul, symmetrization, vector_class_parts)

DEFAULT_TRUNC = 64
TERM_TOL = 1e-14

# (generator index, sign) for each entry of M_f
_PATTERN = (
    ((0, 1), (1, -1), (2, -1), (3, -1)),
    ((1, 1), (0, 1), (3, -1), (2, 1)),
    ((2, 1), (3, 1), (0, 1), (1, -1)),
    ((3, 1), (2, -1), (1, 1), (0, 1)),
)


class MatRep4:
    """4x4 matrix of real-coefficient QPoly entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(QPoly.coerce(e) for e in row) for row in entries)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("MatRep4 needs a 4x4 array")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatRep4 is immutable")

    @classmethod
    def from_generators(cls, f0, f1, f2, f3) -> "MatRep4":
        gens = (f0, f1, f2, f3)
        return cls([[gens[g] if s > 0 else -gens[g] for g, s in row] for row in _PATTERN])

    @classmethod
    def identity(cls, exact: bool = True) -> "MatRep4":
        one = QPoly.constant(1 if exact else 1.0)
        zero = QPoly()
        return cls([[one if r == c else zero for c in range(4)] for r in range(4)])

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def generators(self) -> tuple:
        """First column (f_0, f_1, f_2, f_3)."""
        return tuple(self.entries[r][0] for r in range(4))

    def has_pattern(self) -> bool:
        gens = self.generators()
        return self == MatRep4.from_generators(*gens)

    def to_function(self) -> QPoly:
        return recompose(*self.generators())

    def transpose(self) -> "MatRep4":
        return MatRep4([[self.entries[c][r] for c in range(4)] for r in range(4)])

    @property
    def T(self) -> "MatRep4":
        return self.transpose()

    def __add__(self, other):
        return MatRep4([[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return MatRep4([[a - b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __matmul__(self, other):
        out = []
        for r in range(4):
            row = []
            for c in range(4):
                acc = QPoly()
                for t in range(4):
                    acc = acc + star_mul(self.entries[r][t], other.entries[t][c])
                row.append(acc)
            out.append(row)
        return MatRep4(out)

    def det(self) -> QPoly:
        """Leibniz expansion; 24 products of commuting entries."""
        total = QPoly()
        for perm in permutations(range(4)):
            term = QPoly.constant(_perm_sign(perm))
            for r, c in enumerate(perm):
                term = star_mul(term, self.entries[r][c])
                if term.is_zero():
                    break
            total = total + term
        return total

    def evaluate(self, q) -> list:
        return [[evaluate(e, q) for e in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, MatRep4):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def close_to(self, other, tol: float = 1e-9) -> bool:
        return all(a.close_to(b, tol) for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    def __repr__(self):
        return f"MatRep4({[list(r) for r in self.entries]!r})"


def _perm_sign(perm) -> int:
    sign, seen = 1, list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def to_matrix(f: QPoly) -> MatRep4:
    return MatRep4.from_generators(*component_decompose(QPoly.coerce(f)))


def det_check(f: QPoly) -> QPoly:
    """det(M_f), after checking it equals (f^s)^2."""
    f = QPoly.coerce(f)
    d = to_matrix(f).det()
    fs = symmetrization(f)
    expected = star_mul(fs, fs)
    ok = d == expected if f.exact else d.close_to(expected, 1e-9 * max(1.0, _scale(expected)))
    if not ok:
        raise ArithmeticError("det M_f differs from (f^s)^2")
    return d


def _scale(p: QPoly) -> float:
    return max((abs(c) for c in p.coeffs), default=0.0)


@dataclass(frozen=True)
class MatNormReport:
    point: Quaternion
    m_norm: float
    f_abs: float
    sphere_sup: float


def mat_norm_at(f: QPoly, q) -> MatNormReport:
    """|M_f(z)| = sum_l |f_l(z)| at the slice point of q, with its bounds checked.

    |f(z)| <= |M_f(z)| and |M_f(z)| = |M_{f^c}(z)| hold pointwise. The upper
    bound 4|f| holds for the sup over the sphere through z, not pointwise:
    q - i vanishes at i while M_{q-i}(i) does not.
    """
    f = QPoly.coerce(f)
    q = Quaternion.coerce(q)
    comps = component_decompose(f)
    m_norm = sum(abs(evaluate(c, q)) for c in comps)
    f_abs = abs(evaluate(f, q))
    sup = sphere_sup(f, q)
    tol = 1e-12 * max(1.0, m_norm)
    if not (f_abs <= m_norm + tol and m_norm <= 4 * sup + tol):
        raise ArithmeticError("matrix norm bounds violated")
    mc = sum(abs(evaluate(c, q)) for c in component_decompose(regular_conjugate(f)))
    if abs(mc - m_norm) > tol:
        raise ArithmeticError("|M_f| differs from |M_{f^c}|")
    return MatNormReport(q, m_norm, f_abs, sup)


def matrix_norm(m: MatRep4, q) -> float:
    """Maximal absolute row sum of M(q), each entry a point of C_I."""
    vals = m.evaluate(q)
    return max(sum(abs(v) for v in row) for row in vals)


# exp* and log* ------------------------------------------------------------------

def _sup_bound(p: QPoly, radii) -> float:
    """Upper bound of |p| on the shell(s) |q| in radii."""
    return max(p.coefficient_norm(r) for r in radii)


def _prune(p: QPoly, radii, tol: float) -> QPoly:
    """Drop coefficients whose sup contribution over ``radii`` is below tol."""
    keep = {}
    for n, c in p.terms():
        if abs(c) * max(float(r) ** n for r in radii) > tol:
            keep[n] = c
    return QPoly.from_dict(keep)


def exp_series(f: QPoly, trunc: int = DEFAULT_TRUNC, radii=(1.0,),
               tol: float = TERM_TOL, max_terms: int | None = None) -> tuple:
    """Sum f^{*n}/n! until the added term is below ``tol`` on |q| in radii.

    Laurent inputs are allowed here; the sup bound is taken over the given
    shells. Returns (sum, number of terms used).
    """
    f = QPoly.coerce(f).to_float()
    if max_terms is None:
        max_terms = max(8 * trunc, 512)
    if f.is_zero():
        return QPoly.constant(1.0), 0
    if f.degree == 0 and f.min_degree == 0:
        return _exp_constant(f.coeffs[0], trunc, tol)
    total = QPoly.constant(1.0)
    term = QPoly.constant(1.0)
    n = 0
    while True:
        n += 1
        term = star_mul(term, f) / n
        term = _prune(term, radii, tol * 1e-3)
        total = total + term
        size = _sup_bound(term, radii)
        if size < tol and n >= 1:
            return total, n
        if n >= max_terms:
            raise OutsideConvergence(f"exp series did not settle within {max_terms} terms")


def _exp_constant(c: Quaternion, trunc: int, tol: float) -> tuple:
    # scaling and squaring keeps the alternating series out of cancellation
    size = abs(c)
    s = 0
    while size > 0.5:
        size /= 2
        s += 1
    x = c / (2 ** s)
    total = Quaternion(1.0)
    term = Quaternion(1.0)
    n = 0
    while True:
        n += 1
        term = (term * x) / n
        total = total + term
        if abs(term) < tol * 1e-2 or n >= max(trunc, 64):
            break
    for _ in range(s):
        total = total * total
    return QPoly.constant(total), n + s


def exp_star(f: QPoly, trunc: int = DEFAULT_TRUNC) -> QPoly:
    """exp_*(f) = sum f^{*n}/n!, truncated adaptively (float backend)."""
    f = QPoly.coerce(f)
    if f.min_degree < 0:
        raise NotPolynomial("exp_star expects an ordinary polynomial")
    if trunc < 1:
        raise ValueError("trunc must be at least 1")
    return exp_series(f, trunc)[0]


def log_series(f: QPoly, trunc: int = DEFAULT_TRUNC, radii=(1.0,),
               tol: float = TERM_TOL, max_terms: int = 20000) -> tuple:
    """-sum_{n>=1} (1-f)^{*n}/n on |q| in radii. Returns (sum, terms)."""
    f = QPoly.coerce(f).to_float()
    g = QPoly.constant(1.0) - f
    bound = max(g.component_norm(r) for r in radii)
    if bound >= 1:
        raise OutsideConvergence(
            f"log series needs |1 - f| < 1; coefficient bound is {bound:.6g}")
    total = QPoly()
    power = QPoly.constant(1.0)
    n = 0
    while True:
        n += 1
        power = _prune(star_mul(power, g), radii, tol * 1e-3)
        term = power / n
        total = total - term
        if _sup_bound(term, radii) < tol and n >= 1:
            return total, n
        if n >= max_terms:
            raise OutsideConvergence("log series did not settle")


def log_star(f: QPoly, trunc: int = DEFAULT_TRUNC, radius: float = 1.0) -> QPoly:
    """log_*(f) = -sum (1-f)^{*n}/n for |1 - f| < 1 on the ball of given radius."""
    f = QPoly.coerce(f)
    if f.min_degree < 0:
        raise NotPolynomial("log_star expects an ordinary polynomial")
    return log_series(f, trunc, radii=(radius,))[0]


def exp_matrix(m: MatRep4, trunc: int = DEFAULT_TRUNC, tol: float = TERM_TOL) -> MatRep4:
    """exp(M) = sum M^n/n! computed on the matrix side, as a cross-check."""
    n = 0
    total = MatRep4.identity(exact=False)
    term = MatRep4.identity(exact=False)
    while True:
        n += 1
        term = term @ m
        term = MatRep4([[e / n for e in row] for row in term.entries])
        total = total + term
        size = max(e.coefficient_norm(1.0) for row in term.entries for e in row)
        if size < tol or n >= 8 * trunc:
            return total


# 2x2 same-class representation ------------------------------------------------------

@dataclass(frozen=True)
class MatRep2:
    """[[f_0, -f_1], [f_1, f_0]] representing f = f_0 + f_1 v."""

    f0: QPoly
    f1: QPoly
    v: Quaternion

    def det(self) -> QPoly:
        return star_mul(self.f0, self.f0) + star_mul(self.f1, self.f1)

    def matrix(self) -> list:
        return [[self.f0, -self.f1], [self.f1, self.f0]]

    def __matmul__(self, other: "MatRep2") -> "MatRep2":
        if self.v != other.v:
            raise NotInClass("2x2 representations of different classes")
        a = star_mul(self.f0, other.f0) - star_mul(self.f1, other.f1)
        b = star_mul(self.f0, other.f1) + star_mul(self.f1, other.f0)
        return MatRep2(a, b, self.v)

    def __add__(self, other: "MatRep2") -> "MatRep2":
        if self.v != other.v:
            raise NotInClass("2x2 representations of different classes")
        return MatRep2(self.f0 + other.f0, self.f1 + other.f1, self.v)

    def to_function(self) -> QPoly:
        return self.f0 + star_mul(self.f1, QPoly.constant(self.v))


def to_matrix2(f: QPoly, tag) -> MatRep2:
    f = QPoly.coerce(f)
    if not isinstance(tag, VectorClassTag):
        tag = VectorClassTag(tag)
    if tag.is_zero:
        raise NotInClass("the 2x2 representation needs a nonzero class tag")
    if not in_vector_class(f, tag):
        raise NotInClass(f"{f!r} is not in the class of {tag.v!r}")
    f0, f1 = vector_class_parts(f, tag)
    return MatRep2(f0, f1, tag.v)


def exp_matrix2(m: MatRep2, trunc: int = DEFAULT_TRUNC) -> MatRep2:
    """exp of a 2x2 same-class matrix, via the commuting series."""
    total = MatRep2(QPoly.constant(1.0), QPoly(), m.v)
    term = total
    for n in range(1, 8 * trunc):
        term = term @ m
        term = MatRep2(term.f0 / n, term.f1 / n, m.v)
        total = total + term
        if max(term.f0.coefficient_norm(), term.f1.coefficient_norm()) < TERM_TOL:
            break
    return total


def kernel_element(v, n: int) -> QPoly:
    """2 n pi v / sqrt(v^s) for a constant imaginary v."""
    v = Quaternion.coerce(v).to_float()
    return QPoly.constant(v * (2 * n * math.pi / abs(v)))
