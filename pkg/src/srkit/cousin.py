"""Additive and multiplicative splitting on concentric annuli, and chain gluing.

For the pair (A, B) built from radii r_inner < r_outer, A is the outer region
|q| >= r_inner (regular at infinity), B the closed ball |q| <= r_outer and C
the annulus between them. A Laurent polynomial on C splits by partitioning its
coefficients: negative powers go to A, the rest (constant included) to B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (IncompatibleChain, NotInClass, OutsideConvergence,
                     VanishingOnC)
from .matrep import exp_series, log_series
from .quat import Quaternion
from .starpoly import QPoly, evaluate, star_mul

N_SAMPLES = 200
DEFAULT_SEED = 0
PRUNE_TOL = 1e-18


@dataclass(frozen=True)
class AnnularPair:
    r_inner: float
    r_outer: float

    def __post_init__(self):
        r0, r1 = float(self.r_inner), float(self.r_outer)
        if not (0 < r0 < r1) or not math.isfinite(r1):
            raise ValueError(f"need 0 < r_inner < r_outer, got {r0}, {r1}")
        object.__setattr__(self, "r_inner", r0)
        object.__setattr__(self, "r_outer", r1)

    @property
    def radii(self) -> tuple:
        return (self.r_inner, self.r_outer)

    def samples_C(self, n: int = N_SAMPLES, seed: int = DEFAULT_SEED) -> list:
        """Points on the two boundary spheres of the annulus."""
        rng = np.random.default_rng(seed)
        radii = np.where(np.arange(n) % 2 == 0, self.r_inner, self.r_outer)
        return _shell_points(rng, radii)

    def samples_A(self, n: int = N_SAMPLES, seed: int = DEFAULT_SEED + 1) -> list:
        """Points of the outer region, half of them on its boundary."""
        rng = np.random.default_rng(seed)
        scale = np.where(np.arange(n) % 2 == 0, 1.0, 1.0 + rng.exponential(2.0, n))
        return _shell_points(rng, self.r_inner * scale)

    def samples_B(self, n: int = N_SAMPLES, seed: int = DEFAULT_SEED + 2) -> list:
        rng = np.random.default_rng(seed)
        scale = np.where(np.arange(n) % 2 == 0, 1.0, rng.uniform(0.0, 1.0, n))
        return _shell_points(rng, self.r_outer * scale)


def _shell_points(rng, radii) -> list:
    pts = []
    for r in radii:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        t = rng.uniform(0.0, math.pi)
        x, y = r * math.cos(t), r * math.sin(t)
        pts.append(Quaternion(float(x), *(float(y * c) for c in v)))
    return pts


def sup_at(f: QPoly, points) -> float:
    f = QPoly.coerce(f).to_float()
    return max((abs(evaluate(f, p)) for p in points), default=0.0)


@dataclass(frozen=True)
class SplitResult:
    alpha: QPoly
    beta: QPoly
    d_constant: float


def additive_split(gamma: QPoly, pair: AnnularPair, samples: int = N_SAMPLES,
                   seed: int = DEFAULT_SEED) -> SplitResult:
    """gamma = alpha + beta with alpha = negative powers, beta = the rest."""
    gamma = QPoly.coerce(gamma)
    alpha = QPoly.from_dict({n: c for n, c in gamma.terms() if n < 0})
    beta = QPoly.from_dict({n: c for n, c in gamma.terms() if n >= 0})
    if gamma.is_zero():
        return SplitResult(alpha, beta, 0.0)
    pts = pair.samples_C(samples, seed)
    g_sup = sup_at(gamma, pts)
    if g_sup == 0.0:
        return SplitResult(alpha, beta, 0.0)
    d = sup_at(alpha, pts) / g_sup
    return SplitResult(alpha, beta, d)


# multiplicative -------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicativeSplit:
    """Iterates as (a, b); the extra fields are measurements."""

    a: QPoly
    b: QPoly
    residual: float
    a_deviation: float
    rounds: int = 0
    history: tuple = field(default_factory=tuple)
    order: str = "ab"

    def __iter__(self):
        return iter((self.a, self.b))

    def product(self) -> QPoly:
        return star_mul(self.a, self.b) if self.order == "ab" else star_mul(self.b, self.a)


def _prune(p: QPoly, radii, tol: float = PRUNE_TOL) -> QPoly:
    keep = {n: c for n, c in p.terms() if abs(c) * max(r ** n for r in radii) > tol}
    return QPoly.from_dict(keep)


def neumann_inverse(f: QPoly, radii, tol: float = 1e-16, max_terms: int = 2000) -> QPoly:
    """(1 + x)^{-*} = sum (-x)^{*k} for f = 1 + x with |x| < 1 on the shells."""
    f = QPoly.coerce(f).to_float()
    x = f - QPoly.constant(1.0)
    if x.is_zero():
        return QPoly.constant(1.0)
    bound = max(x.coefficient_norm(r) for r in radii)
    if bound >= 1:
        raise OutsideConvergence(f"Neumann series needs |f - 1| < 1, bound {bound:.3g}")
    total = QPoly.constant(1.0)
    term = QPoly.constant(1.0)
    for _ in range(max_terms):
        term = _prune(star_mul(term, -x), radii)
        if term.is_zero() or max(term.coefficient_norm(r) for r in radii) < tol:
            total = total + term
            return total
        total = total + term
    raise OutsideConvergence("Neumann series did not settle")


def _deviation(f: QPoly, points) -> float:
    return sup_at(f - QPoly.constant(1.0), points)


def _check_eps(a: QPoly, pair: AnnularPair, eps) -> float:
    dev = _deviation(a, pair.samples_A())
    if eps is not None and not dev < eps:
        raise OutsideConvergence(
            f"|a - 1| on A is {dev:.3g}, not below the requested {eps:g}")
    return dev


def _reconstruction(c: QPoly, prod: QPoly, pair: AnnularPair) -> float:
    return sup_at(prod - c, pair.samples_C())


def multiplicative_split_sp(c: QPoly, pair: AnnularPair, eps=None,
                            tol: float = 1e-14) -> MultiplicativeSplit:
    """c = a * b via log: split log c additively and exponentiate each part.

    Requires real coefficients. A negative c (on the real points of the
    annulus) is handled by the sign flip c -> -c, a -> -a.
    """
    c = QPoly.coerce(c).to_float()
    if not c.is_slice_preserving():
        raise NotInClass("multiplicative_split_sp needs real (slice-preserving) coefficients")
    pts = pair.samples_C()
    if min(abs(evaluate(c, p)) for p in pts) < 1e-12:
        raise VanishingOnC("c vanishes on the annulus")
    sign = 1.0
    real_vals = [evaluate(c, Quaternion(s * r)).w for r in pair.radii for s in (1.0, -1.0)]
    if all(v < 0 for v in real_vals):
        sign, c = -1.0, -c
    elif any(v <= 0 for v in real_vals):
        raise VanishingOnC("c changes sign on the real points of the annulus")
    if not _deviation(c, pts) < 1:
        raise OutsideConvergence("log route needs |c - 1| < 1 on the annulus")
    gamma, _ = log_series(c, radii=pair.radii, tol=tol)
    split = additive_split(gamma, pair)
    a, _ = exp_series(split.alpha, radii=pair.radii, tol=tol)
    b, _ = exp_series(split.beta, radii=pair.radii, tol=tol)
    a = a.scale(sign)
    target = c.scale(sign)
    residual = _reconstruction(target, star_mul(a, b), pair)
    dev = _check_eps(a.scale(sign), pair, eps)
    return MultiplicativeSplit(a, b, residual, dev)


def multiplicative_split_general(c: QPoly, pair: AnnularPair, eps=None,
                                 rho: float = 1 / 8, order: str = "ab",
                                 tol: float = 1e-10, max_rounds: int = 200,
                                 stall: int = 5) -> MultiplicativeSplit:
    """c = a * b (or b * a for order="ba") by iterated additive splitting.

    Each round splits G = c_n - 1 into G_A + G_B and peels the factors
    (1 + G_A) and (1 + G_B) off the two sides, so c_{n+1} - 1 is of second
    order in G. The factors accumulate into a (outer region) and b (ball).
    """
    if order not in ("ab", "ba"):
        raise ValueError("order must be 'ab' or 'ba'")
    c = QPoly.coerce(c).to_float()
    pts = pair.samples_C()
    if not _deviation(c, pts) < rho:
        raise OutsideConvergence(f"|c - 1| on the annulus is not below rho = {rho:g}")
    radii = pair.radii
    one = QPoly.constant(1.0)
    a = b = one
    cur = c
    history = []
    best, since_best = math.inf, 0
    rounds = 0
    while True:
        res = max((cur - one).coefficient_norm(r) for r in radii)
        history.append(res)
        if res < tol:
            break
        if res < best * (1 - 1e-12):
            best, since_best = res, 0
        else:
            since_best += 1
            if since_best >= stall:
                raise OutsideConvergence(f"splitting iteration stalled at residual {res:.3g}")
        if rounds >= max_rounds:
            raise OutsideConvergence(f"no convergence within {max_rounds} rounds")
        split = additive_split(cur - one, pair, samples=0)
        fa, fb = one + split.alpha, one + split.beta
        ia, ib = neumann_inverse(fa, radii), neumann_inverse(fb, radii)
        if order == "ab":
            # cur = fa * cur' * fb
            cur = _prune(star_mul(star_mul(ia, cur), ib), radii)
            a = _prune(star_mul(a, fa), radii)
            b = _prune(star_mul(fb, b), radii)
        else:
            # cur = fb * cur' * fa
            cur = _prune(star_mul(star_mul(ib, cur), ia), radii)
            b = _prune(star_mul(b, fb), radii)
            a = _prune(star_mul(fa, a), radii)
        rounds += 1
    out = MultiplicativeSplit(a, b, 0.0, 0.0, rounds, tuple(history), order)
    residual = _reconstruction(c, out.product(), pair)
    dev = _check_eps(a, pair, eps)
    return MultiplicativeSplit(a, b, residual, dev, rounds, tuple(history), order)


# chains ----------------------------------------------------------------------------

def default_overlaps(n_regions: int) -> list:
    """Overlap k of regions k and k+1: the annulus 2^k <= |q| <= 2^k * 1.5."""
    return [AnnularPair(2.0 ** k, 1.5 * 2.0 ** k) for k in range(n_regions - 1)]


def _chain_transitions(data, mode: str) -> tuple:
    links = {}
    for idx, trans in data:
        k, l = (int(t) for t in idx)
        if abs(k - l) != 1:
            raise IncompatibleChain(f"({k}, {l}) is not a link of a chain")
        trans = QPoly.coerce(trans)
        if k > l:
            k, l = l, k
            if mode == "additive":
                trans = -trans
            else:
                trans = None, trans  # inverse taken lazily below
        if k in links:
            if not _compatible(links[k], trans, mode):
                raise IncompatibleChain(f"inconsistent data on overlap ({k}, {k + 1})")
            continue
        links[k] = trans
    if not links:
        return 0, []
    n = max(links) + 2
    missing = [k for k in range(n - 1) if k not in links]
    if missing or min(links) < 0:
        raise IncompatibleChain(f"missing transitions on overlaps {missing}")
    return n, [links[k] for k in range(n - 1)]


def _compatible(t1, t2, mode: str) -> bool:
    if mode == "additive":
        return QPoly.coerce(t1).close_to(t2, 1e-12)
    # multiplicative: v_{kl} * v_{lk} = 1
    p = _as_forward(t1, None)
    q = t2[1] if isinstance(t2, tuple) else None
    if q is None:
        return p.close_to(t2, 1e-12)
    return star_mul(q, p).close_to(QPoly.constant(1.0), 1e-10)


def _as_forward(t, pair):
    if isinstance(t, tuple):
        if pair is None:
            raise IncompatibleChain("reverse multiplicative transition without overlap")
        return neumann_inverse(t[1], pair.radii)
    return t


def glue_chain(data, mode: str = "additive", overlaps=None, rho: float = 1 / 8) -> list:
    """Per-region v_k with v_k - v_{k+1} (additive) or v_{k+1} * v_k^{-*}
    (multiplicative) equal to the given transition on each overlap.

    Region 0 is the inner ball, the last region is regular at infinity. The
    chain is solved outward: each new transition is split, the B-part is
    absorbed by every earlier region and the A-part starts the new one.
    """
    if mode not in ("additive", "multiplicative"):
        raise ValueError("mode must be 'additive' or 'multiplicative'")
    n, trans = _chain_transitions(data, mode)
    if n == 0:
        return []
    if overlaps is None:
        overlaps = default_overlaps(n)
    if len(overlaps) != n - 1:
        raise IncompatibleChain(f"{n - 1} overlaps needed, {len(overlaps)} given")
    trans = [_as_forward(t, overlaps[k]) for k, t in enumerate(trans)]
    if mode == "additive":
        exact = all(t.exact for t in trans)
        zero = QPoly()
        v = [zero]
        for k, t in enumerate(trans):
            w = v[k] - t
            split = additive_split(w, overlaps[k], samples=0)
            v = [vj - split.beta for vj in v]
            v.append(split.alpha)
        if not exact:
            v = [p.to_float() for p in v]
        return v
    one = QPoly.constant(1.0)
    all_radii = tuple(r for o in overlaps for r in o.radii)
    v = [one]
    for k, t in enumerate(trans):
        pair = overlaps[k]
        w = star_mul(QPoly.coerce(t).to_float(), v[k])
        split = multiplicative_split_general(w, pair, rho=rho)
        binv = neumann_inverse(split.b, all_radii)
        v = [_prune(star_mul(vj, binv), all_radii) for vj in v]
        v.append(split.a)
    return v


def chain_residuals(v: list, data, mode: str = "additive", overlaps=None) -> list:
    """Sampled deviation of each reproduced transition on its overlap."""
    n, trans = _chain_transitions(data, mode)
    if overlaps is None:
        overlaps = default_overlaps(n)
    trans = [_as_forward(t, overlaps[k]) for k, t in enumerate(trans)]
    out = []
    for k, t in enumerate(trans):
        pts = overlaps[k].samples_C()
        if mode == "additive":
            got = v[k] - v[k + 1]
            out.append(sup_at(got - t, pts))
        else:
            # v_{k+1} = t * v_k  <=>  v_{k+1} * v_k^{-*} = t
            out.append(sup_at(star_mul(QPoly.coerce(t).to_float(), v[k]) - v[k + 1], pts))
    return out
