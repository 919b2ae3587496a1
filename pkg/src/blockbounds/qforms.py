"""Positive-definite quadratic forms with half- and quarter-integral coefficients.

A form is stored as an integer matrix ``gram`` together with a positive
``denom``; its bilinear Gram matrix is gram/denom and q(x) = x^T gram x / denom.
Dynkin and other integral forms use denom 2 (the usual doubled Gram); tensor
products multiply denominators, so products of two integral forms land at 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import _linalg as la
from .gram import GramMatrix

MAX_ENUM_RANK = 12


class NotIntegral(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    gram: tuple[tuple[int, ...], ...]
    denom: int = 2

    def __post_init__(self):
        g = la.to_int_matrix(self.gram)
        if not la.is_symmetric(g):
            raise ValueError("form matrix must be symmetric")
        if self.denom <= 0:
            raise ValueError("denominator must be positive")
        object.__setattr__(self, "gram", tuple(tuple(r) for r in g))

    @classmethod
    def from_coefficients(cls, coeffs: dict[tuple[int, int], int | Fraction], rank: int) -> QuadraticForm:
        """Form sum_{i<=j} q_ij x_i x_j from a dict {(i, j): q_ij} (0-based, i <= j)."""
        b = [[Fraction(0)] * rank for _ in range(rank)]
        for (i, j), c in coeffs.items():
            i, j = min(i, j), max(i, j)
            if i == j:
                b[i][i] += Fraction(c)
            else:
                b[i][j] += Fraction(c, 2)
                b[j][i] += Fraction(c, 2)
        return cls.from_bilinear(b)

    @classmethod
    def from_bilinear(cls, b: Sequence[Sequence]) -> QuadraticForm:
        den = 1
        for row in b:
            for x in row:
                x = Fraction(x)
                den = den * x.denominator // gcd(den, x.denominator)
        return cls(tuple(tuple(int(Fraction(x) * den) for x in row) for row in b), den)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def bilinear(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denom) for x in row] for row in self.gram]

    @property
    def doubled_gram(self) -> list[list[Fraction]]:
        """Entry (i, j) is q_ij off the diagonal and 2 q_ii on it."""
        return [[Fraction(2 * x, self.denom) for x in row] for row in self.gram]

    def coefficient(self, i: int, j: int) -> Fraction:
        c = Fraction(self.gram[i][j], self.denom)
        return c if i == j else 2 * c

    @property
    def integral(self) -> bool:
        n = self.rank
        return all(self.coefficient(i, j).denominator == 1 for i in range(n) for j in range(i, n))

    def is_positive_definite(self) -> bool:
        return la.is_pd(self.gram)

    def __call__(self, x: Sequence[int]) -> Fraction:
        return Fraction(la.quad_value(self.gram, x), self.denom)

    def contragredient(self, s: Sequence[Sequence[int]]) -> QuadraticForm:
        """The form q' with weighted_sum(q', S M S^T) = weighted_sum(q, M)."""
        s_inv = la.integer_inverse(s)
        if s_inv is None:
            raise ValueError("S is not unimodular")
        g = la.matmul(la.matmul(la.transpose(s_inv), self.gram), s_inv)
        return QuadraticForm(tuple(tuple(r) for r in g), self.denom)

    def __str__(self) -> str:
        terms = []
        for i in range(self.rank):
            for j in range(i, self.rank):
                c = self.coefficient(i, j)
                if c:
                    var = f"x{i + 1}^2" if i == j else f"x{i + 1}x{j + 1}"
                    terms.append(f"{c}*{var}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def dynkin_a(t: int) -> QuadraticForm:
    """sum x_i^2 - sum x_i x_{i+1}."""
    if t < 1:
        raise ValueError("rank must be at least 1")
    g = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(t)] for i in range(t)]
    return QuadraticForm(tuple(tuple(r) for r in g), 2)


def sum_of_squares(t: int) -> QuadraticForm:
    return QuadraticForm(tuple(tuple(int(i == j) for j in range(t)) for i in range(t)), 1)


def tensor(q1: QuadraticForm, q2: QuadraticForm) -> QuadraticForm:
    if not (q1.is_positive_definite() and q2.is_positive_definite()):
        raise ValueError("tensor product is only taken of positive definite forms")
    g = la.kron(q1.gram, q2.gram)
    return QuadraticForm(tuple(tuple(r) for r in g), q1.denom * q2.denom)


def minimum_at_least_one(q: QuadraticForm, search_bound: int | None = None) -> bool:
    """Exhaustively decide whether q(x) >= 1 for all nonzero integer x.

    Enumerates the ellipsoid x^T gram x < denom with exact Fincke-Pohst
    bounds; ``search_bound`` is accepted for interface symmetry and ignored
    because the ellipsoid itself is finite and exact.
    """
    if q.rank > MAX_ENUM_RANK:
        raise ValueError(f"rank {q.rank} exceeds enumeration cap {MAX_ENUM_RANK}")
    if not q.is_positive_definite():
        raise ValueError("form is not positive definite")
    for _ in la.short_vectors(q.gram, q.denom, strict=True):
        return False
    return True


def weighted_sum(q: QuadraticForm, m) -> Fraction:
    """sum_{i<=j} q_ij m_ij for symmetric m."""
    rows = m.entries if isinstance(m, GramMatrix) else m
    if len(rows) != q.rank or any(len(r) != q.rank for r in rows):
        raise ValueError(f"size mismatch: form of rank {q.rank}, matrix of size {len(rows)}")
    total = sum(q.gram[i][j] * rows[i][j] for i in range(q.rank) for j in range(q.rank))
    return Fraction(total, q.denom)


def _integral_sum(q: QuadraticForm, cartan_bar) -> int:
    if not q.integral:
        raise NotIntegral("this bound needs a form with integral coefficients")
    c = GramMatrix.coerce(cartan_bar)
    if not c.is_positive_definite():
        raise ValueError("Cartan matrix must be positive definite")
    value = weighted_sum(q, c)
    assert value.denominator == 1
    return int(value)


def bound_outer(q: QuadraticForm, cartan_bar, u_order: int) -> int:
    return u_order * _integral_sum(q, cartan_bar)


def bound_stable(q: QuadraticForm, cartan_bar, k0_value: int) -> int:
    return k0_value * _integral_sum(q, cartan_bar)


def change_basic_set(cartan, s_matrix: Sequence[Sequence[int]]) -> GramMatrix:
    """S C S^T for unimodular S."""
    s = la.to_int_matrix(s_matrix)
    if abs(la.det(s)) != 1:
        raise ValueError("basic set change needs a unimodular matrix")
    c = GramMatrix.coerce(cartan)
    out = GramMatrix(la.matmul(la.matmul(s, c.to_list()), la.transpose(s)))
    assert out.rank() == c.rank()
    return out
