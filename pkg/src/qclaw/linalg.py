"""Exact rational linear algebra on small integer matrices (backed by sympy)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy


def _to_sympy(rows) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Integer(v) if isinstance(v, int) else sympy.Rational(v) for v in row] for row in rows])


def _frac(v) -> Fraction:
    v = sympy.Rational(v)
    return Fraction(int(v.p), int(v.q))


def rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return _to_sympy(rows).rank()


@lru_cache(maxsize=4096)
def _left_inverse_cached(rows: tuple) -> tuple | None:
    B = _to_sympy(rows)
    if B.rank() < B.shape[1]:
        return None
    L = (B.T * B).inv() * B.T
    return tuple(tuple(_frac(v) for v in L.row(i)) for i in range(L.rows))


def left_inverse(rows) -> tuple | None:
    """A rational matrix ``L`` with ``L B = 1`` or ``None`` when ``B`` lacks
    full column rank."""
    rows = tuple(tuple(int(v) for v in r) for r in rows)
    if not rows or not rows[0]:
        return ()
    return _left_inverse_cached(rows)


def inverse(rows) -> list[list[Fraction]]:
    M = _to_sympy(rows)
    if M.det() == 0:
        raise ZeroDivisionError("singular matrix")
    Minv = M.inv()
    return [[_frac(Minv[i, j]) for j in range(Minv.cols)] for i in range(Minv.rows)]


def solve_rational(A, b) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``A x = b`` over Q. Returns a particular solution and a basis of
    the null space of ``A``, or ``None`` when the system is inconsistent."""
    As = _to_sympy(A)
    bs = sympy.Matrix([sympy.Rational(v) for v in b])
    try:
        sol, params = As.gauss_jordan_solve(bs)
    except ValueError:
        return None
    zero = {p: 0 for p in params}
    particular = [_frac(v) for v in sol.subs(zero)]
    null = [[_frac(v) for v in vec] for vec in As.nullspace()]
    return particular, null


def matmul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]
