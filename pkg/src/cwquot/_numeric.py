"""Small high-precision linear algebra helpers on top of mpmath."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

import mpmath

DPS = 50
TOL = mpmath.mpf(10) ** -30


def mpf(x: Any) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x) if not isinstance(x, mpmath.mpc) else x


def mat(rows: Sequence[Sequence[Any]]) -> mpmath.matrix:
    with mpmath.workdps(DPS):
        m = mpmath.matrix(len(rows), len(rows[0]) if rows else 0)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                m[i, j] = x if isinstance(x, mpmath.mpc) else mpf(x)
        return m


def rows_of(m: mpmath.matrix) -> list[list]:
    return [[m[i, j] for j in range(m.cols)] for i in range(m.rows)]


def columns(m: mpmath.matrix) -> list[list]:
    return [[m[i, j] for i in range(m.rows)] for j in range(m.cols)]


def from_columns(cols: Sequence[Sequence[Any]]) -> mpmath.matrix:
    n = len(cols[0]) if cols else 0
    return mat([[cols[j][i] for j in range(len(cols))] for i in range(n)])


def max_abs(m: mpmath.matrix) -> mpmath.mpf:
    best = mpmath.mpf(0)
    for i in range(m.rows):
        for j in range(m.cols):
            best = max(best, abs(m[i, j]))
    return best


def rref_nullspace(m: mpmath.matrix, tol: Any = None) -> list[list]:
    """Basis of the null space by Gauss-Jordan with partial pivoting."""
    tol = TOL if tol is None else tol
    with mpmath.workdps(DPS):
        a = m.copy()
        rows, cols = a.rows, a.cols
        scale = max(max_abs(a), mpmath.mpf(1))
        pivots = []
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            p = max(range(r, rows), key=lambda i: abs(a[i, c]))
            if abs(a[p, c]) <= tol * scale:
                continue
            if p != r:
                for j in range(cols):
                    a[p, j], a[r, j] = a[r, j], a[p, j]
            piv = a[r, c]
            for j in range(cols):
                a[r, j] /= piv
            for i in range(rows):
                if i != r and a[i, c] != 0:
                    f = a[i, c]
                    for j in range(cols):
                        a[i, j] -= f * a[r, j]
            pivots.append(c)
            r += 1
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [mpmath.mpf(0)] * cols
            v[fc] = mpmath.mpf(1)
            for i, pc in enumerate(pivots):
                v[pc] = -a[i, fc]
            basis.append(v)
        return basis


def rank(m: mpmath.matrix, tol: Any = None) -> int:
    return m.cols - len(rref_nullspace(m, tol))


def solve(a: mpmath.matrix, b: mpmath.matrix) -> mpmath.matrix:
    with mpmath.workdps(DPS):
        return mpmath.lu_solve(a, b)


def least_squares(a: mpmath.matrix, b: mpmath.matrix) -> mpmath.matrix:
    """Solve the normal equations; a has full column rank."""
    with mpmath.workdps(DPS):
        at = a.T
        return mpmath.lu_solve(at * a, at * b)


def nearest_integer_matrix(m: mpmath.matrix) -> tuple[list[list[int]], mpmath.mpf]:
    ints = [[int(mpmath.nint(m[i, j])) for j in range(m.cols)] for i in range(m.rows)]
    err = mpmath.mpf(0)
    for i in range(m.rows):
        for j in range(m.cols):
            err = max(err, abs(m[i, j] - ints[i][j]))
    return ints, err
