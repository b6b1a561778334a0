import math
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from gen import fquat, rpoly, runit
from srkit.cousin import (AnnularPair, additive_split, chain_residuals,
                          default_overlaps, glue_chain,
                          multiplicative_split_general,
                          multiplicative_split_sp, neumann_inverse, sup_at)
from srkit.errors import (IncompatibleChain, NotInClass, OutsideConvergence,
                          VanishingOnC)
from srkit.quat import Quaternion
from srkit.starpoly import QPoly, VectorClassTag, in_vector_class, qpoly, star_mul

seeds = st.integers(min_value=0, max_value=10 ** 6)
PAIR = AnnularPair(0.5, 2.0)
ONE = QPoly.constant(1.0)


def _small(rng, lo=-1, hi=1, size=0.01):
    return QPoly.from_dict({n: fquat(rng, size) for n in range(lo, hi + 1)})


def test_pair_validation():
    with pytest.raises(ValueError):
        AnnularPair(2.0, 1.0)
    with pytest.raises(ValueError):
        AnnularPair(0.0, 1.0)
    assert PAIR.radii == (0.5, 2.0)
    norms = sorted({round(abs(p), 9) for p in PAIR.samples_C()})
    assert norms == [0.5, 2.0]
    assert len(PAIR.samples_A()) == 200
    # sampling is seeded
    assert PAIR.samples_C() == PAIR.samples_C()


def test_additive_examples():
    gamma = QPoly([1, 1, 1], -1)
    res = additive_split(gamma, PAIR)
    assert res.alpha == QPoly([1], -1) and res.beta == qpoly(1, 1)
    real = QPoly([mpq(3), mpq(-1, 2), 0, mpq(5)], -2)
    res = additive_split(real, PAIR)
    assert res.alpha.is_slice_preserving() and res.beta.is_slice_preserving()
    assert additive_split(QPoly(), PAIR).d_constant == 0.0


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_additive_partition(seed):
    rng = random.Random(seed)
    gamma = rpoly(rng, max_deg=4, min_deg=-4)
    res = additive_split(gamma, PAIR)
    assert res.alpha + res.beta == gamma
    assert res.alpha.degree < 0 or res.alpha.is_zero()
    assert res.beta.is_zero() or res.beta.min_degree >= 0
    if not gamma.is_zero():
        pts = PAIR.samples_C()
        assert res.d_constant == pytest.approx(sup_at(res.alpha, pts) / sup_at(gamma, pts))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_vectorial_class_closure(seed):
    rng = random.Random(seed)
    v = runit(rng)
    tag = VectorClassTag(v)
    gamma = QPoly.from_dict({n: Quaternion(mpq(rng.randint(-5, 5), 3)) + v.scale(rng.randint(-4, 4))
                             for n in range(-3, 4)})
    res = additive_split(gamma, PAIR)
    assert in_vector_class(res.alpha, tag) and in_vector_class(res.beta, tag)


def test_sp_examples():
    a, b = multiplicative_split_sp(ONE, PAIR)
    assert a.close_to(ONE, 1e-15) and b.close_to(ONE, 1e-15)
    c = QPoly([0.1, 1.0, 0.1], -1)
    out = multiplicative_split_sp(c, PAIR)
    assert out.residual < 1e-8
    assert out.a.is_slice_preserving() and out.b.is_slice_preserving()
    a, b = multiplicative_split_sp(QPoly.constant(1.2), PAIR)
    assert a.close_to(ONE, 1e-14) and b.close_to(QPoly.constant(1.2), 1e-14)


def test_sp_sign_flip():
    out = multiplicative_split_sp(QPoly([-0.05, -1.1, -0.05], -1), PAIR)
    assert out.residual < 1e-8
    assert out.a.coeff(0).w < 0


def test_sp_errors():
    with pytest.raises(NotInClass):
        multiplicative_split_sp(qpoly(1.0, Quaternion(0, 0.1, 0, 0)), PAIR)
    with pytest.raises(VanishingOnC):
        multiplicative_split_sp(qpoly(1.0, -1.0), PAIR)
    with pytest.raises(OutsideConvergence):
        multiplicative_split_sp(QPoly.constant(3.0), PAIR)
    with pytest.raises(OutsideConvergence):
        multiplicative_split_sp(QPoly([0.3, 1.0], -1), PAIR, eps=1e-3)


def test_general_examples():
    out = multiplicative_split_general(ONE, PAIR)
    assert out.a.close_to(ONE, 0) and out.b.close_to(ONE, 0) and out.rounds == 0
    c = QPoly.from_dict({-1: Quaternion(0, 0, 0, 0.03), 0: Quaternion(1.0),
                         1: Quaternion(0, 0.05, 0, 0)})
    out = multiplicative_split_general(c, PAIR)
    assert out.residual < 1e-8
    assert star_mul(out.a, out.b).close_to(out.product(), 0)
    assert out.a.degree <= 0 and out.b.min_degree >= 0
    tight = QPoly.from_dict({-1: Quaternion(0, 0, 0, 1e-5), 0: Quaternion(1.0),
                             1: Quaternion(0, 0.05, 0, 0)})
    out = multiplicative_split_general(tight, PAIR, eps=1e-3)
    assert out.a_deviation < 1e-3


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_general_orders_and_decay(seed):
    rng = random.Random(seed)
    c = ONE + _small(rng)
    for order in ("ab", "ba"):
        out = multiplicative_split_general(c, PAIR, order=order)
        assert out.residual < 1e-8
        h = out.history
        assert all(h[n + 1] <= 0.75 * h[n] for n in range(len(h) - 1))


def test_orders_differ_for_noncommuting_data():
    c = QPoly.from_dict({-1: Quaternion(0, 0, 0.04, 0), 0: Quaternion(1.0),
                         1: Quaternion(0, 0.05, 0, 0)})
    ab = multiplicative_split_general(c, PAIR, order="ab")
    ba = multiplicative_split_general(c, PAIR, order="ba")
    assert ab.residual < 1e-8 and ba.residual < 1e-8
    # the factors do not commute: swapping them misses c
    assert sup_at(star_mul(ab.b, ab.a) - c, PAIR.samples_C()) > 1e-4


def test_general_errors():
    with pytest.raises(OutsideConvergence):
        multiplicative_split_general(QPoly.constant(1.5), PAIR)
    with pytest.raises(OutsideConvergence):
        multiplicative_split_general(QPoly([0.05, 1.0], -1), PAIR, eps=1e-6)
    with pytest.raises(ValueError):
        multiplicative_split_general(ONE, PAIR, order="xy")


def test_neumann_inverse():
    rng = random.Random(3)
    f = ONE + _small(rng, size=0.05)
    inv = neumann_inverse(f, PAIR.radii)
    assert sup_at(star_mul(f, inv) - ONE, PAIR.samples_C()) < 1e-12
    with pytest.raises(OutsideConvergence):
        neumann_inverse(QPoly.constant(3.0), PAIR.radii)


def test_glue_trivial():
    v = glue_chain([((0, 1), QPoly())])
    assert all(p.is_zero() for p in v) and len(v) == 2
    assert glue_chain([]) == []


def test_glue_additive_single():
    t = QPoly([1, 0, 1], -1)
    v = glue_chain([((0, 1), t)])
    assert v[0] - v[1] == t
    res = additive_split(-t, default_overlaps(2)[0], samples=0)
    assert v[1] == res.alpha


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_glue_additive_chain(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    real = rng.random() < 0.5
    data = []
    for k in range(n - 1):
        t = rpoly(rng, max_deg=3, min_deg=-3)
        if real:
            t = QPoly([Quaternion(c.w) for c in t.coeffs], t.min_degree)
        data.append(((k, k + 1), t))
    v = glue_chain(data)
    for k, t in enumerate(dict(data).values()):
        assert v[k] - v[k + 1] == t
    assert v[0].is_zero() or v[0].min_degree >= 0
    assert v[-1].is_zero() or v[-1].degree <= 0
    if real:
        assert all(p.is_slice_preserving() for p in v)
    assert max(chain_residuals(v, data)) == 0


def test_glue_reverse_links():
    t = QPoly([1, 2], -1)
    v1 = glue_chain([((0, 1), t)])
    v2 = glue_chain([((1, 0), -t)])
    assert v1 == v2
    v3 = glue_chain([((0, 1), t), ((1, 0), -t)])
    assert v3 == v1


def test_glue_multiplicative():
    rng = random.Random(21)
    for _ in range(3):
        data = [((k, k + 1), ONE + _small(rng, size=0.004)) for k in range(2)]
        v = glue_chain(data, mode="multiplicative")
        assert len(v) == 3
        assert max(chain_residuals(v, data, mode="multiplicative")) < 1e-8


def test_glue_multiplicative_custom_overlaps():
    overlaps = [AnnularPair(0.5, 0.8), AnnularPair(1.0, 1.6)]
    data = [((0, 1), QPoly.from_dict({-1: Quaternion(0, 0.01, 0, 0), 0: Quaternion(1.0)})),
            ((1, 2), QPoly.from_dict({0: Quaternion(1.0), 1: Quaternion(0, 0, 0, 0.02)}))]
    v = glue_chain(data, mode="multiplicative", overlaps=overlaps)
    assert max(chain_residuals(v, data, "multiplicative", overlaps)) < 1e-8


def test_glue_incompatible():
    with pytest.raises(IncompatibleChain):
        glue_chain([((0, 2), QPoly())])
    with pytest.raises(IncompatibleChain):
        glue_chain([((0, 1), QPoly()), ((2, 3), QPoly())])
    with pytest.raises(IncompatibleChain):
        glue_chain([((0, 1), qpoly(1)), ((0, 1), qpoly(2))])
    with pytest.raises(IncompatibleChain):
        glue_chain([((0, 1), qpoly(1))], overlaps=default_overlaps(3))
    with pytest.raises(ValueError):
        glue_chain([((0, 1), qpoly(1))], mode="other")


def test_default_overlaps():
    ov = default_overlaps(4)
    assert [o.radii for o in ov] == [(1.0, 1.5), (2.0, 3.0), (4.0, 6.0)]
    assert all(ov[k].r_outer < ov[k + 1].r_inner for k in range(2))
    assert math.isclose(ov[0].r_outer, 1.5)
