"""Exact lattice utilities on Gram matrices: pruning, LLL, congruence, Smith form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import _linalg as la
from .errors import CapExceeded
from .gram import GramMatrix, NotPSD

CONGRUENCE_CAP = 6


@dataclass(frozen=True)
class ReductionResult:
    """``reduced`` is full rank and original = transform^T * reduced * transform."""

    reduced: GramMatrix
    transform: tuple[tuple[int, ...], ...]
    dropped_rows: tuple[int, ...] = ()

    def reproduces(self, original) -> bool:
        t = [list(r) for r in self.transform]
        if not t:
            return all(x == 0 for r in GramMatrix.coerce(original) for x in r)
        back = la.matmul(la.matmul(la.transpose(t), self.reduced.to_list()), t)
        return GramMatrix.coerce(original) == back


def _gso(g: Sequence[Sequence[int]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Gram-Schmidt coefficients mu and squared norms B* from a Gram matrix."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(g[i][j]) - sum((mu[j][k] * mu[i][k] * bstar[k] for k in range(j)), Fraction(0))
            mu[i][j] = s / bstar[j]
        bstar[i] = g[i][i] - sum((mu[i][k] ** 2 * bstar[k] for k in range(i)), Fraction(0))
        if bstar[i] <= 0:
            raise NotPSD("Gram matrix is not positive definite")
    return mu, bstar


def is_lll_reduced(g, delta: Fraction = Fraction(3, 4)) -> bool:
    mu, bstar = _gso(GramMatrix.coerce(g).entries)
    n = len(bstar)
    size_ok = all(abs(mu[i][j]) <= Fraction(1, 2) for i in range(n) for j in range(i))
    lovasz_ok = all(bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1] for k in range(1, n))
    return size_ok and lovasz_ok


def _round(x: Fraction) -> int:
    return (x + Fraction(1, 2)).__floor__()


def lll_basis(g: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> tuple[list[list[int]], list[list[int]]]:
    """(B, G') with G' = B g B^T LLL-reduced and B unimodular."""
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie strictly between 1/4 and 1")
    g = la.to_int_matrix(g)
    n = len(g)
    b = la.identity(n)
    mu, bstar = _gso(g)

    def sub_row(k: int, j: int, q: int) -> None:
        # b_k <- b_k - q b_j
        b[k] = [x - q * y for x, y in zip(b[k], b[j])]
        gk, gj = g[k], g[j]
        gkk = gk[k] - 2 * q * gk[j] + q * q * gj[j]
        for i in range(n):
            g[k][i] = g[k][i] - q * g[j][i]
        for i in range(n):
            g[i][k] = g[k][i]
        g[k][k] = gkk

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                sub_row(k, j, q)
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            g[k], g[k - 1] = g[k - 1], g[k]
            for row in g:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, bstar = _gso(g)
            k = max(k - 1, 1)
    return b, g


def lll(m, delta: Fraction = Fraction(3, 4)) -> ReductionResult:
    gm = GramMatrix.coerce(m)
    if not gm.is_positive_definite():
        raise NotPSD("LLL needs a positive definite Gram matrix")
    b, g = lll_basis(gm.entries, delta)
    t = la.transpose(la.integer_inverse(b))
    return ReductionResult(GramMatrix(g), tuple(tuple(r) for r in t))


def prune(m, delta: Fraction = Fraction(3, 4)) -> ReductionResult:
    """Full-rank LLL-reduced Gram of the lattice spanned by any factorization of m."""
    gm = GramMatrix.coerce(m)
    rows = gm.to_list()
    n = len(rows)
    dropped = tuple(i for i in range(n) if rows[i][i] == 0)
    if n == 0:
        return ReductionResult(GramMatrix([]), (), dropped)
    u, r = la.column_reduce(rows)
    ur = [row[:r] for row in u]
    g0 = la.matmul(la.matmul(la.transpose(ur), rows), ur)
    s = la.integer_inverse(u)[:r]
    if r == 0:
        return ReductionResult(GramMatrix([]), (), dropped)
    b, g = lll_basis(g0, delta)
    # m = s^T g0 s and g0 = b^-1 g b^-T
    t = la.matmul(la.transpose(la.integer_inverse(b)), s)
    res = ReductionResult(GramMatrix(g), tuple(tuple(row) for row in t), dropped)
    assert res.reproduces(gm)
    return res


def _norm_vectors(g: Sequence[Sequence[int]], norm: int) -> list[tuple[int, ...]]:
    out = []
    for v in la.short_vectors(g, norm):
        if la.quad_value(g, v) == norm:
            out.append(v)
            out.append(tuple(-x for x in v))
    return out


def _isometries(a: GramMatrix, b: GramMatrix) -> Iterator[list[tuple[int, ...]]]:
    """Integer V with V a V^T = b (rows of V are a-coordinates of b's basis)."""
    n = a.size
    ga = a.entries
    cands = [_norm_vectors(ga, b[i][i]) for i in range(n)]
    chosen: list[tuple[int, ...]] = []
    chosen_a: list[list[int]] = []

    def rec(i: int) -> Iterator[list[tuple[int, ...]]]:
        if i == n:
            yield list(chosen)
            return
        for v in cands[i]:
            if all(sum(x * y for x, y in zip(v, w)) == b[i][j] for j, w in enumerate(chosen_a)):
                chosen.append(v)
                chosen_a.append([sum(v[k] * ga[k][j] for k in range(n)) for j in range(n)])
                yield from rec(i + 1)
                chosen.pop()
                chosen_a.pop()

    yield from rec(0)


def _check_pair(a, b) -> tuple[GramMatrix, GramMatrix]:
    a, b = GramMatrix.coerce(a), GramMatrix.coerce(b)
    if a.size != b.size:
        raise ValueError("matrices have different sizes")
    if a.size > CONGRUENCE_CAP:
        raise CapExceeded(f"congruence testing is capped at size {CONGRUENCE_CAP}")
    if not (a.is_positive_definite() and b.is_positive_definite()):
        raise NotPSD("congruence testing needs positive definite input")
    return a, b


def congruent(a, b) -> bool:
    """Is there a unimodular S with S a S^T = b?"""
    a, b = _check_pair(a, b)
    if a.det() != b.det() or sorted(smith_normal_form(a)) != sorted(smith_normal_form(b)):
        return False
    for _ in _isometries(a, b):
        return True
    return False


def find_congruence(a, b) -> list[list[int]] | None:
    a, b = _check_pair(a, b)
    for v in _isometries(a, b):
        return [list(r) for r in v]
    return None


def automorphisms(a) -> list[list[list[int]]]:
    """All unimodular S with S a S^T = a."""
    a, _ = _check_pair(a, a)
    return [[list(r) for r in v] for v in _isometries(a, a)]


def smith_normal_form(m) -> tuple[int, ...]:
    """Diagonal of the Smith normal form (zeros last)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form as _snf

    rows = [list(r) for r in (m.entries if isinstance(m, GramMatrix) else m)]
    if not rows or not rows[0]:
        return ()
    d = _snf(Matrix(rows), domain=ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    nonzero = sorted(x for x in diag if x)
    return tuple(nonzero + [0] * (len(diag) - len(nonzero)))
