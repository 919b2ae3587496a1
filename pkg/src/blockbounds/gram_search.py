"""Maximal decompositions M = Q^T Q with integer Q and no zero rows.

Q is built one column at a time, which amounts to embedding the lattice with
Gram M into Z^k coordinate by coordinate. Rows that agree on every column
built so far are interchangeable, so within such a group only the multiset
of new entries matters. Rows are only ever created with a positive first
entry. Each decomposition, up to row order and row signs, is therefore
produced exactly once. Rows created at column j or later vanish on the
earlier columns, so their number is at most the trace of the Schur
complement of the leading j x j block. That bounds the branch-and-bound
search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import isqrt
from typing import Iterator, Sequence

from . import _linalg as la
from .gram import GramMatrix
from .lattice import prune
from .qforms import QuadraticForm, minimum_at_least_one, weighted_sum

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


def _canonical_row(x: Sequence[int]) -> tuple[int, ...]:
    for v in x:
        if v:
            return tuple(x) if v > 0 else tuple(-a for a in x)
    raise ValueError("zero row")


@dataclass(frozen=True)
class Decomposition:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(sorted((_canonical_row(r) for r in self.rows), reverse=True))
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    def gram(self) -> list[list[int]]:
        width = len(self.rows[0]) if self.rows else 0
        return la.gram_of_rows(self.rows, width)

    def validates(self, m) -> bool:
        g = GramMatrix.coerce(m)
        if not all(any(r) and len(r) == g.size for r in self.rows):
            return False
        return g == la.gram_of_rows(self.rows, g.size)


@dataclass
class SearchResult:
    k: int
    witness: Decomposition | None
    exact: bool
    nodes: int = 0

    @property
    def lower_bound_only(self) -> bool:
        return not self.exact


def schur_traces(m: Sequence[Sequence[int]]) -> list[int]:
    """floor(trace of the Schur complement of the leading j x j block), j = 0..t.

    A singular leading block uses the pseudo-solution of the psd system,
    which is exact because M's columns lie in the span of its leading block.
    """
    t = len(m)
    out = []
    for j in range(t + 1):
        if j == 0:
            out.append(sum(m[i][i] for i in range(t)))
            continue
        a = [list(r[:j]) for r in m[:j]]
        total = Fraction(0)
        keep = _independent_rows(a)
        sub = [[a[i][c] for c in keep] for i in keep]
        for col in range(j, t):
            rhs = [m[i][col] for i in keep]
            x = la.solve(sub, rhs) if keep else []
            total += m[col][col] - sum(x[q] * rhs[q] for q in range(len(keep)))
        out.append(total.numerator // total.denominator)
    return out


def _independent_rows(a: list[list[int]]) -> list[int]:
    keep: list[int] = []
    for i in range(len(a)):
        trial = keep + [i]
        if la.rank([[a[r][c] for c in trial] for r in trial]) == len(trial):
            keep = trial
    return keep


def _multisets(count: int, values: list[int], budget: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Ways to give ``count`` rows values from ``values`` with sum of squares <= budget.

    Yields tuples of (value, multiplicity) with nonzero multiplicities.
    """
    def rec(i: int, left: int, room: int) -> Iterator[list[tuple[int, int]]]:
        if left == 0:
            yield []
            return
        if i == len(values):
            return
        v = values[i]
        sq = v * v
        top = left if sq == 0 else min(left, room // sq)
        if i == len(values) - 1:
            if sq * left <= room:
                yield [(v, left)]
            return
        for c in range(top, -1, -1):
            for rest in rec(i + 1, left - c, room - c * sq):
                yield ([(v, c)] if c else []) + rest

    for combo in rec(0, count, budget):
        yield tuple(combo)


def _square_partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    """Partitions of n into positive squares, as nonincreasing lists of roots; many parts first."""
    if n == 0:
        yield []
        return
    largest = isqrt(n) if largest is None else min(largest, isqrt(n))
    for v in range(1, largest + 1):
        for rest in _square_partitions(n - v * v, v):
            yield [v] + rest


class _Searcher:
    def __init__(self, m: list[list[int]], budget: int):
        self.m = m
        self.t = len(m)
        self.bounds = schur_traces(m)
        self.budget = budget
        self.nodes = 0
        self.exhausted = False

    def _tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
        return self.exhausted

    def _extensions(self, groups: list[tuple[tuple[int, ...], int]], j: int) -> Iterator[list]:
        """All ways to fill column j: new group list (prefix + (value,), count)."""
        m = self.m
        target = [m[i][j] for i in range(j)]
        norm = m[j][j]
        ng = len(groups)
        # suffix sums of count * prefix_i^2 for the Cauchy-Schwarz prune
        suffix = [[0] * j for _ in range(ng + 1)]
        for g in range(ng - 1, -1, -1):
            pre, c = groups[g]
            suffix[g] = [suffix[g + 1][i] + c * pre[i] * pre[i] for i in range(j)]
        ip = [0] * j
        out: list[tuple[tuple[int, ...], int]] = []

        def rec(g: int, used: int) -> Iterator[list]:
            if self._tick():
                return
            room = norm - used
            for i in range(j):
                gap = target[i] - ip[i]
                if gap * gap > room * suffix[g][i]:
                    return
            if g == ng:
                for parts in _square_partitions(room):
                    fresh = []
                    for v in sorted(set(parts)):
                        fresh.append(((0,) * j + (v,), parts.count(v)))
                    yield out + fresh
                return
            pre, c = groups[g]
            b = isqrt(room)
            values = list(range(b, -b - 1, -1))
            for combo in _multisets(c, values, room):
                extra = 0
                for v, cnt in combo:
                    extra += cnt * v * v
                    for i in range(j):
                        ip[i] += cnt * v * pre[i]
                    out.append((pre + (v,), cnt))
                yield from rec(g + 1, used + extra)
                for v, cnt in combo:
                    for i in range(j):
                        ip[i] -= cnt * v * pre[i]
                    out.pop()
                if self.exhausted:
                    return

        yield from rec(0, 0)

    def _rows(self, groups) -> int:
        return sum(c for _, c in groups)

    def maximize(self) -> tuple[int, list | None]:
        best: list = [-1, None]

        def rec(groups: list, j: int) -> None:
            if j == self.t:
                k = self._rows(groups)
                if k > best[0]:
                    best[0], best[1] = k, groups
                return
            if self._rows(groups) + self.bounds[j] <= best[0]:
                return
            for nxt in self._extensions(groups, j):
                rec(nxt, j + 1)
                if self.exhausted:
                    return

        rec([], 0)
        return best[0], best[1]

    def enumerate_exact(self, k: int) -> list[list]:
        found: list = []

        def rec(groups: list, j: int) -> None:
            rows = self._rows(groups)
            if j == self.t:
                if rows == k:
                    found.append(groups)
                return
            if rows > k or rows + self.bounds[j] < k:
                return
            for nxt in self._extensions(groups, j):
                rec(nxt, j + 1)
                if self.exhausted:
                    return

        rec([], 0)
        return found


def _expand(groups) -> list[tuple[int, ...]]:
    rows = []
    for pre, c in groups:
        if any(pre):
            rows.extend([pre] * c)
    return rows


def _reduce(m) -> tuple[list[list[int]], list[list[int]]]:
    gm = GramMatrix.coerce(m)
    red = prune(gm)
    return red.reduced.to_list(), [list(r) for r in red.transform]


def _lift(rows: Sequence[Sequence[int]], t: list[list[int]]) -> Decomposition:
    return Decomposition(tuple(tuple(x) for x in la.matmul([list(r) for r in rows], t)) if rows else ())


def max_k(m, budget: int = DEFAULT_BUDGET, reduce: bool = True) -> SearchResult:
    """Largest k with M = Q^T Q, Q in Z^{k x t} without zero rows.

    By default M is first pruned to a full-rank LLL-reduced Gram matrix and
    the witness mapped back; ``reduce=False`` searches on M directly. If the
    node budget runs out, the best decomposition found so far is returned
    with ``exact=False``.
    """
    if reduce:
        g, t = _reduce(m)
    else:
        g = GramMatrix.coerce(m).to_list()
        t = la.identity(len(g))
        if all(x == 0 for r in g for x in r):
            g = []
    if not g:
        return SearchResult(0, Decomposition(()), True)
    s = _Searcher(g, budget)
    k, groups = s.maximize()
    witness = None
    if groups is not None:
        witness = _lift(_expand(groups), t)
        assert witness.validates(m)
    return SearchResult(k, witness, not s.exhausted, s.nodes)


def signed_permutation_automorphisms(m) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (perm, signs) with M[perm[i]][perm[j]] * s_i * s_j = M[i][j]."""
    g = GramMatrix.coerce(m).entries
    n = len(g)
    out = []
    for perm in permutations(range(n)):
        if any(g[perm[i]][perm[i]] != g[i][i] for i in range(n)):
            continue
        for signs in product((1, -1), repeat=n):
            if signs[0] == -1 and n:
                continue  # -1 overall acts trivially on decompositions
            if all(g[perm[i]][perm[j]] * signs[i] * signs[j] == g[i][j] for i in range(n) for j in range(n)):
                out.append((perm, signs))
    return out


def _apply(dec: Decomposition, perm, signs) -> Decomposition:
    # column i of the new Q is signs[i] * column perm[i] of the old one
    return Decomposition(tuple(tuple(signs[i] * r[perm[i]] for i in range(len(r))) for r in dec.rows))


def classes_under(decs: list[Decomposition], symmetries) -> list[Decomposition]:
    """Representatives (lexicographically smallest) of orbits under the column symmetries."""
    seen: set = set()
    reps = []
    for d in decs:
        if d.rows in seen:
            continue
        orbit = {_apply(d, perm, signs).rows for perm, signs in symmetries}
        orbit.add(d.rows)
        seen |= orbit
        reps.append(Decomposition(min(orbit)))
    return reps


def all_max_decompositions(m, k: int | None = None, budget: int = DEFAULT_BUDGET) -> list[Decomposition]:
    """All decompositions with exactly k rows, up to row order and row signs.

    Works on M as given (no reduction) so the rows stay in M's coordinates.
    """
    gm = GramMatrix.coerce(m)
    if k is None:
        k = max_k(gm, budget).k
    s = _Searcher(gm.to_list(), budget)
    found = s.enumerate_exact(k)
    if s.exhausted:
        raise BudgetExceeded(f"enumeration exceeded {budget} nodes")
    decs = sorted({Decomposition(tuple(_expand(groups))) for groups in found}, key=lambda d: d.rows)
    for d in decs:
        assert d.validates(gm)
    return decs


def decomposition_classes(m, k: int | None = None, budget: int = DEFAULT_BUDGET) -> list[Decomposition]:
    """all_max_decompositions modulo the signed column permutations fixing M."""
    decs = all_max_decompositions(m, k, budget)
    return classes_under(decs, signed_permutation_automorphisms(m))


def quick_upper_bound(m, q: QuadraticForm | None = None, check_minimum: bool = True) -> int:
    """floor(sum_{i,j} b_ij m_ij) for a form with minimum >= 1 (trace if q is None).

    Each row x of a decomposition contributes q(x) >= 1, and the contributions
    add up to the pairing of q with M.
    """
    gm = GramMatrix.coerce(m)
    if q is None:
        return gm.trace()
    if check_minimum and not minimum_at_least_one(q):
        raise ValueError("form has a nonzero integer vector of value below 1")
    value = weighted_sum(q, gm)
    return value.numerator // value.denominator


def brute_force_max_k(m) -> int:
    """Reference answer by plain memoized recursion over a coordinate box.

    Tries every nonzero vector with x_i^2 <= M_ii and checks only that the
    residual diagonal stays nonnegative; -1 if no decomposition exists.
    """
    g = tuple(tuple(r) for r in GramMatrix.coerce(m).entries)
    n = len(g)
    ranges = [range(-isqrt(g[i][i]), isqrt(g[i][i]) + 1) for i in range(n)]
    vecs = [v for v in product(*ranges) if any(v) and _canonical_row(v) == v]

    @lru_cache(maxsize=None)
    def best(r: tuple, start: int) -> int:
        if all(x == 0 for row in r for x in row):
            return 0
        top = -1
        for idx in range(start, len(vecs)):
            v = vecs[idx]
            if any(v[i] * v[i] > r[i][i] for i in range(n)):
                continue
            new = tuple(tuple(r[i][j] - v[i] * v[j] for j in range(n)) for i in range(n))
            sub = best(new, idx)
            if sub >= 0:
                top = max(top, sub + 1)
        return top

    return best(g, 0)
