"""Exact integer/rational matrix helpers shared by the other modules.

Matrices are plain lists of rows. Entries are ``int`` or ``Fraction``;
nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence

Matrix = list[list[int]]


def to_int_matrix(m: Sequence[Sequence[int]]) -> Matrix:
    out = []
    for row in m:
        new_row = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integral entry {x}")
                x = x.numerator
            elif not isinstance(x, int) or isinstance(x, bool):
                if int(x) != x:
                    raise ValueError(f"non-integral entry {x!r}")
                x = int(x)
            new_row.append(x)
        out.append(new_row)
    width = {len(r) for r in out}
    if len(width) > 1:
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [
        [x * y for x in ra for y in rb]
        for ra in a
        for rb in b
    ]


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


def gram_of_rows(rows: Sequence[Sequence[int]], width: int | None = None) -> Matrix:
    """Return Q^T Q for the matrix Q whose rows are ``rows``."""
    if width is None:
        width = len(rows[0]) if rows else 0
    g = [[0] * width for _ in range(width)]
    for row in rows:
        nz = [(i, x) for i, x in enumerate(row) if x]
        for i, x in nz:
            gi = g[i]
            for j, y in nz:
                gi[j] += x * y
    return g


def psd_rank(m: Sequence[Sequence]) -> int | None:
    """Rank of a symmetric matrix if it is positive semidefinite, else None.

    Symmetric Gaussian elimination on the diagonal: a negative pivot, or a
    zero pivot with a nonzero row remainder, certifies indefiniteness.
    """
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    rank = 0
    for k in range(n):
        piv = a[k][k]
        if piv < 0:
            return None
        if piv == 0:
            if any(a[k][j] != 0 for j in range(k, n)):
                return None
            continue
        rank += 1
        rowk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                rowi = a[i]
                for j in range(k + 1, n):
                    rowi[j] -= f * rowk[j]
    return rank


def is_psd(m: Sequence[Sequence]) -> bool:
    return is_symmetric(m) and psd_rank(m) is not None


def is_pd(m: Sequence[Sequence]) -> bool:
    return is_symmetric(m) and psd_rank(m) == len(m)


def det(m: Sequence[Sequence]) -> Fraction | int:
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    result = Fraction(1)
    for k in range(n):
        piv_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv_row is None:
            return 0
        if piv_row != k:
            a[k], a[piv_row] = a[piv_row], a[k]
            result = -result
        piv = a[k][k]
        result *= piv
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    if result.denominator == 1:
        return result.numerator
    return result


def rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                for j in range(c, cols):
                    a[i][j] -= f * a[r][j]
        r += 1
    return r


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve ``a x = b`` exactly; ``a`` must have full column rank.

    Returns None when the (possibly overdetermined) system is inconsistent.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix does not have full column rank")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        return None
    return [aug[i][cols] for i in range(cols)]


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in m[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def integer_inverse(m: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    return to_int_matrix(inverse(m))


def column_reduce(m: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Unimodular U such that the last ``N - r`` columns of ``m U`` vanish.

    Returns ``(U, r)`` with r the rank. The trailing columns of U are then
    a basis of the integer kernel ``{x in Z^N : m x = 0}``.
    """
    a = to_int_matrix(m)
    n_cols = len(a[0]) if a else 0
    u = identity(n_cols)

    def col_op(i: int, j: int, p: int, q: int, r: int, s: int) -> None:
        # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
        for mat in (a, u):
            for row in mat:
                x, y = row[i], row[j]
                row[i] = p * x + q * y
                row[j] = r * x + s * y

    c = 0
    for row_idx in range(len(a)):
        if c >= n_cols:
            break
        row = a[row_idx]
        for j in range(c + 1, n_cols):
            x, y = row[c], row[j]
            if y == 0:
                continue
            g, s_, t_ = _xgcd(x, y)
            # [s t; -y/g x/g] has determinant 1
            col_op(c, j, s_, t_, -y // g, x // g)
        if row[c] != 0:
            if row[c] < 0:
                _negate_col(a, u, c)
            c += 1
    return u, c


def _negate_col(a: Matrix, u: Matrix, c: int) -> None:
    for mat in (a, u):
        for row in mat:
            row[c] = -row[c]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_kernel(m: Sequence[Sequence[int]]) -> Matrix:
    """Basis (as rows) of the saturated lattice ``{x in Z^N : m x = 0}``."""
    u, r = column_reduce(m)
    return [list(col) for col in transpose(u)[r:]]


def cholesky_coefficients(gram: Sequence[Sequence]) -> list[list[Fraction]]:
    """Fincke-Pohst coefficients: q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(
    gram: Sequence[Sequence], bound, *, strict: bool = False
) -> Iterator[tuple[int, ...]]:
    """All nonzero integer x with x^T gram x <= bound (``<`` if strict), one per ±pair.

    Exhaustive Fincke-Pohst enumeration with exact rational bounds. The
    representative yielded has its last nonzero coordinate positive.
    """
    n = len(gram)
    bound = Fraction(bound)
    if n == 0 or bound < 0 or (strict and bound == 0):
        return
    q = cholesky_coefficients(gram)
    x = [0] * n

    def rec(i: int, remaining: Fraction, all_zero: bool) -> Iterator[tuple[int, ...]]:
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = remaining / q[i][i]
        s = isqrt(r.numerator // r.denominator) + 1
        lo = (-c).__floor__() - s
        hi = (-c).__ceil__() + s
        if all_zero:
            lo = max(lo, 0)
        for xi in range(lo, hi + 1):
            t = xi + c
            used = q[i][i] * t * t
            if used > remaining:
                continue
            x[i] = xi
            rest = remaining - used
            if i == 0:
                if all_zero and xi == 0:
                    continue
                if strict and rest == 0:
                    continue
                yield tuple(x)
            else:
                yield from rec(i - 1, rest, all_zero and xi == 0)
        x[i] = 0

    yield from rec(n - 1, bound, True)


def quad_value(gram: Sequence[Sequence], x: Sequence[int]):
    return sum(gram[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x)) if x[i] and x[j])
