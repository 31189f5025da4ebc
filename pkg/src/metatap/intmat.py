"""Small exact integer-matrix helpers.

Matrices are immutable tuples of tuples of Python ints, so every operation
is exact for arbitrarily large entries.  Nothing here knows about
polynomials; see exactalg for matrices over Z[t, 1/t].
"""

from __future__ import annotations

from fractions import Fraction

Mat = tuple[tuple[int, ...], ...]


def mat(rows) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int) -> Mat:
    return tuple((0,) * n for _ in range(n))


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Mat) -> Mat:
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(c: int, a: Mat) -> Mat:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_pow(a: Mat, e: int) -> Mat:
    if e < 0:
        return mat_pow(mat_inverse(a), -e)
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def is_zero(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


def is_permutation_matrix(a: Mat) -> bool:
    n = len(a)
    for row in a:
        if sum(row) != 1 or any(x not in (0, 1) for x in row):
            return False
    return all(sum(a[i][j] for i in range(n)) == 1 for j in range(n))


def int_det(a: Mat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_inverse(a: Mat) -> Mat:
    """Inverse of an integer matrix with determinant +-1.

    Permutation matrices take the cheap transpose path; everything else goes
    through exact Gauss-Jordan over Fraction and is verified integral.
    """
    if is_permutation_matrix(a):
        return transpose(a)
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    inv = []
    for row in aug:
        ents = row[n:]
        if any(x.denominator != 1 for x in ents):
            raise ValueError("matrix is not invertible over the integers")
        inv.append(tuple(int(x) for x in ents))
    return tuple(inv)
