"""Gaussian elimination for right-linear systems over H.

Solves sum_n M[r][n] x_n = b[r] (matrix entries on the left of the unknowns).
Row operations multiply rows on the left, which keeps the solution set.
"""

from __future__ import annotations

from .quat import Quaternion, qmul


def solve_right_linear(M: list, b: list, tol: float = 1e-10):
    """Return one solution x (list of Quaternion) or None if inconsistent."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [list(M[r]) + [b[r]] for r in range(rows)]
    exact = all(e.exact for row in A for e in row)

    def small(q: Quaternion) -> bool:
        return q.is_zero() if exact else abs(q) <= tol

    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        if exact:
            piv = next((k for k in range(r, rows) if not A[k][c].is_zero()), None)
        else:
            piv = max(range(r, rows), key=lambda k: abs(A[k][c]))
            if small(A[piv][c]):
                piv = None
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [qmul(inv, e) for e in A[r]]
        for k in range(rows):
            if k != r and not A[k][c].is_zero():
                factor = A[k][c]
                A[k] = [e - qmul(factor, p) for e, p in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    for k in range(r, rows):
        if not small(A[k][cols]):
            return None
    zero = Quaternion(0) if exact else Quaternion(0.0)
    x = [zero] * cols
    for k, c in enumerate(pivots):
        x[c] = A[k][cols]
    return x
