"""Dense real polynomials as coefficient lists (low to high).

Only what the quotient normalisation and zero finding need: multiplication,
Euclidean division and monic gcd over an exact or float field.
"""

from __future__ import annotations

from .scalars import is_exact, mpq


def trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [p[0] * 0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for k, b in enumerate(q):
            out[i + k] += a * b
    return trim(out)


def divmod_(p: list, d: list) -> tuple:
    p, d = trim(p), trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(d):
        return [], p
    rem = list(p)
    lead = d[-1]
    q = [rem[0] * 0] * (len(p) - len(d) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(d) - 1] / lead
        q[k] = c
        if c != 0:
            for t, dt in enumerate(d):
                rem[k + t] -= c * dt
    return trim(q), trim(rem[:len(d) - 1])


def monic(p: list) -> list:
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def gcd(p: list, q: list) -> list:
    """Monic gcd; exact inputs only (float Euclid is unstable)."""
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a) if a else []


def is_exact_poly(p: list) -> bool:
    return all(is_exact(c) for c in p)


def power(p: list, n: int) -> list:
    out = [mpq(1) if is_exact_poly(p) else 1.0]
    for _ in range(n):
        out = mul(out, p)
    return out
