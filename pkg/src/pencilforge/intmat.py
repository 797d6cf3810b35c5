"""Exact integer and rational matrix routines.

Everything in this package that looks like linear algebra funnels through
here: integer matrices are lists of lists of Python ints (arbitrary
precision), rational work uses fractions.Fraction.  No floats, ever.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Matrix = list[list[int]]
Vector = list[int]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    assert len(a[0]) == inner
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def transpose(a: Matrix) -> Matrix:
    return [list(row) for row in zip(*a)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return a == b


def mat_pow(a: Matrix, k: int) -> Matrix:
    n = len(a)
    if k < 0:
        return mat_pow(mat_inverse_int(a), -k)
    out = identity(n)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def mat_inverse_int(a: Matrix) -> Matrix:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = [[x for x in row[n:]] for row in m]
    assert all(x.denominator == 1 for row in out for x in row), "matrix not unimodular"
    return [[int(x) for x in row] for row in out]


def determinant(a: Matrix) -> int:
    """Integer determinant via fraction-free Bareiss elimination."""
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_invariant_factors(a: Matrix) -> list[int]:
    """Nontrivial invariant factors d_1 | d_2 | ... of an integer matrix.

    Ones are dropped; an empty list therefore means the cokernel of the
    matrix (restricted to its rank) is free of torsion.
    """
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    factors: list[int] = []
    s = 0
    while s < rows and s < cols:
        # find the smallest nonzero entry in the remaining block
        best = None
        for i in range(s, rows):
            for j in range(s, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[s], m[bi] = m[bi], m[s]
        for row in m:
            row[s], row[bj] = row[bj], row[s]
        if m[s][s] < 0:
            m[s] = [-x for x in m[s]]
        # clear row and column; restart if a remainder shows up
        dirty = False
        for i in range(s + 1, rows):
            if m[i][s] != 0:
                q = m[i][s] // m[s][s]
                m[i] = [x - q * y for x, y in zip(m[i], m[s])]
                if m[i][s] != 0:
                    dirty = True
        for j in range(s + 1, cols):
            if m[s][j] != 0:
                q = m[s][j] // m[s][s]
                for row in m:
                    row[j] -= q * row[s]
                if m[s][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block
        piv = m[s][s]
        offender = None
        for i in range(s + 1, rows):
            for j in range(s + 1, cols):
                if m[i][j] % piv != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[s] = [x + y for x, y in zip(m[s], m[offender])]
            continue
        factors.append(piv)
        s += 1
    return [d for d in factors if d != 1]


def rational_nullspace(a: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right nullspace of a rational matrix."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [row[:] for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def symmetric_signature(form: list[list[Fraction]]) -> int:
    """Signature of a symmetric rational bilinear form, by Sylvester inertia.

    Exact symmetric Gaussian elimination: diagonalise by simultaneous
    row/column operations and count signs of the diagonal.
    """
    n = len(form)
    m = [row[:] for row in form]
    sig = 0
    done = [False] * n
    for _ in range(n):
        # pick a nonzero diagonal entry
        k = next((i for i in range(n) if not done[i] and m[i][i] != 0), None)
        if k is None:
            # hunt for an off-diagonal nonzero pair: contributes (+1, -1)
            pair = None
            for i in range(n):
                if done[i]:
                    continue
                for j in range(i + 1, n):
                    if not done[j] and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # row/col operation: add row j to row i to create a diagonal entry
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            continue
        sig += 1 if m[k][k] > 0 else -1
        done[k] = True
        piv = m[k][k]
        for i in range(n):
            if i != k and not done[i] and m[i][k] != 0:
                f = m[i][k] / piv
                for c in range(n):
                    m[i][c] -= f * m[k][c]
                for r in range(n):
                    m[r][i] -= f * m[r][k]
    return sig


def primitive(v: Vector) -> Vector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g <= 1:
        return list(v)
    return [x // g for x in v]
