"""Explicit model groups whose generalized decomposition numbers are known.

Two families are covered: the semidirect products <u> x| <x> with x acting
as a unit gamma, and the metacyclic-type groups of rank-two abelian defect
with a twisted inertial quotient. Each yields a decomposition column (or
matrix) over Z[zeta], its Gram matrix over an integral basis, and the
closed-form character counts. Brute-force class counting of the model
groups provides an independent check on every count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Hashable, Sequence

from . import _linalg as la
from .cyclotomic import (
    CycInt,
    PrimePowerModulus,
    UnitSubgroup,
    multiplicative_order,
    subgroup_from_generator,
)
from .errors import CapExceeded
from .gram import GramMatrix
from .intbasis import FixedFieldBasis, build_basis, express

ORACLE_ORDER_CAP = 10**5


# -- closed forms -------------------------------------------------------------


def _p_adic_split(x: int, p: int) -> tuple[int, int]:
    s = 0
    while x % p == 0:
        x //= p
        s += 1
    return s, x


def k0_semidirect(p: int, n: int, r: int = 1, s: int = 0, gamma: int | None = None) -> int:
    """Number of height-zero characters of <u> x| N, |u| = p^n, |N| = p^s r.

    For p = 2 the answer depends on whether N contains some -5^a, so the
    generator ``gamma`` of N is required instead of (r, s).
    """
    q = p**n
    if p == 2:
        if gamma is None:
            raise ValueError("p = 2 needs the generator gamma of N")
        order = multiplicative_order(gamma, q)
        elems = {pow(gamma, j, q) for j in range(order)}
        minus_fives = {(-pow(5, a, q)) % q for a in range(max(1, q))}
        if elems & minus_fives:
            return 2 * order
        return q
    if gamma is not None:
        s, r = _p_adic_split(multiplicative_order(gamma, q), p)
    if (p - 1) % r or s < 0 or s > n - 1:
        raise ValueError(f"(r, s) = ({r}, {s}) is not the order split of a subgroup mod {q}")
    num = q + p**s * (r * r - 1)
    assert num % r == 0
    return num // r


def finallem_bound(p: int, n1: int, n2: int, l1: int, l2: int, d: int) -> int:
    _check_metacyclic_params(p, l1, l2, d)
    a, b = p**n1 - 1, p**n2 - 1
    return a // l1 * (b // l2) + l1 * (b // l2) + l2 * (a // l1) + (l1 * l2) // (d * d)


def brauer_diff(p: int, n: int, m: int, l1: int, l2: int) -> int:
    """k(B) - l(B) for the rank-two abelian defect groups with decomposable action."""
    a, b = p**n - 1, p**m - 1
    if a % l1 or b % l2:
        raise ValueError("inertial data do not divide p^n - 1, p^m - 1")
    return a // l1 * (b // l2) + l1 * (b // l2) + l2 * (a // l1)


def l2_major_bound(pn: int, r: int, c11, c12: int | None = None, c22: int | None = None) -> int:
    """((p^n - 1)/r + r)(c11 + c22 - c12); accepts a 2x2 Cartan matrix as ``c11``."""
    if c12 is None:
        (c11, c12), (_, c22) = c11
    if (pn - 1) % r:
        raise ValueError(f"r = {r} does not divide p^n - 1 = {pn - 1}")
    return ((pn - 1) // r + r) * (c11 + c22 - c12)


def navarro_check(u_order: int, l: int, v_order: int, quotient_order: int, intersection_order: int) -> bool:
    if min(u_order, l, v_order, quotient_order, intersection_order) <= 0:
        raise ValueError("all orders must be positive")
    lhs = (Fraction(u_order - 1, l) + l) * v_order
    rhs = (Fraction(quotient_order - 1, l) + l) * intersection_order
    return lhs <= rhs


def cyclic_cartan(defect_order: int, l: int) -> GramMatrix:
    if l < 1 or (defect_order - 1) % l:
        raise ValueError(f"l = {l} does not divide |D| - 1 = {defect_order - 1}")
    m = (defect_order - 1) // l
    return GramMatrix([[m + (i == j) for j in range(l)] for i in range(l)])


# -- brute-force class counting -------------------------------------------------


def _conjugacy_classes(
    elements: Sequence[Hashable],
    mult: Callable,
    generators: Sequence[Hashable],
    identity: Hashable,
) -> list[list]:
    inverses = []
    for g in generators:
        prev, x = identity, g
        while x != identity:
            prev, x = x, mult(x, g)
        inverses.append(prev)
    seen = set()
    classes = []
    for h in elements:
        if h in seen:
            continue
        cls = [h]
        seen.add(h)
        stack = [h]
        while stack:
            y = stack.pop()
            for g, gi in zip(generators, inverses):
                z = mult(mult(g, y), gi)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
                    stack.append(z)
        classes.append(cls)
    return classes


def conjugacy_count(p: int, n: int, gamma: int, cap: int = ORACLE_ORDER_CAP) -> tuple[int, int]:
    """(k, k0) of <u> x| <x>, x u x^-1 = u^gamma, by explicit enumeration.

    k is the number of conjugacy classes. k0 comes from Clifford theory: an
    orbit of length L on Irr(<u>) carries |N|/L characters of degree L.
    """
    q = p**n
    e = multiplicative_order(gamma, q)
    order = q * e
    if order > cap:
        raise CapExceeded(f"group order {order} exceeds cap {cap}")
    gpow = [pow(gamma, c, q) for c in range(e)]

    def mult(a, b):
        return ((a[0] + gpow[a[1]] * b[0]) % q, (a[1] + b[1]) % e)

    elements = [(a, c) for a in range(q) for c in range(e)]
    k = len(_conjugacy_classes(elements, mult, [(1, 0), (0, 1 % e)], (0, 0)))

    seen: set[int] = set()
    chars = k0 = deg_sq = 0
    for a in range(q):
        if a in seen:
            continue
        orbit = {a * g % q for g in gpow}
        seen |= orbit
        length = len(orbit)
        count = e // length
        chars += count
        deg_sq += count * length * length
        if length % p:
            k0 += count
    assert chars == k and deg_sq == order, "character count disagrees with class count"
    return k, k0


# -- semidirect model -----------------------------------------------------------


@dataclass(frozen=True)
class SemidirectModel:
    """Decomposition column of the principal block of <u> x| <x> at u."""

    modulus: PrimePowerModulus
    gamma: int
    s: int
    r: int
    rows: tuple[tuple[CycInt, int], ...]

    @property
    def subgroup(self) -> UnitSubgroup:
        return subgroup_from_generator(self.modulus, self.gamma)

    @property
    def row_count(self) -> int:
        return sum(mult for _, mult in self.rows)


def semidirect_model(p: int, n: int, gamma: int) -> SemidirectModel:
    mod = PrimePowerModulus(p, n)
    mod.require_odd()
    q = mod.order
    if gamma % p == 0:
        raise ValueError(f"gamma = {gamma} is not coprime to p")
    s, r = _p_adic_split(multiplicative_order(gamma, q), p)
    rows: list[tuple[CycInt, int]] = [(CycInt.integer(mod, 1), p**s * r)]
    top = p ** (n - s)
    seen: set[int] = set()
    for a in range(1, top):
        if a in seen:
            continue
        orbit = sorted({a * pow(gamma, j, top) % top for j in range(r)})
        assert len(orbit) == r
        seen.update(orbit)
        value = CycInt.from_exponents(mod, [p**s * b for b in orbit])
        rows.append((value, p**s))
    return SemidirectModel(mod, gamma % q, s, r, tuple(rows))


def semidirect_coefficients(model: SemidirectModel, basis: FixedFieldBasis | None = None) -> list[list[int]]:
    """Integer matrix A with one row per character, expressed in ``basis``.

    With ``basis=None`` the rows are power-basis coefficient vectors.
    """
    if basis is not None and (basis.modulus != model.modulus or basis.subgroup.elements != model.subgroup.elements):
        raise ValueError("basis was built for a different (p, n, N)")
    out = []
    for value, mult in model.rows:
        row = list(value.coeffs) if basis is None else express(value, basis)
        out.extend([row] * mult)
    if basis is not None:
        _assert_block_shape(model, la.gram_of_rows(out, len(basis)))
    return out


def _components(g: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(g)
    comp = [-1] * n
    out = []
    for start in range(n):
        if comp[start] >= 0:
            continue
        stack, members = [start], []
        comp[start] = len(out)
        while stack:
            i = stack.pop()
            members.append(i)
            for j in range(n):
                if g[i][j] and comp[j] < 0:
                    comp[j] = len(out)
                    stack.append(j)
        out.append(sorted(members))
    return out


def _assert_block_shape(model: SemidirectModel, g: list[list[int]]) -> None:
    p, n, s, r = model.modulus.p, model.modulus.n, model.s, model.r
    ps = p**s
    first_size = (p - 1) // r
    comps = _components(g)
    first = [c for c in comps if len(c) == first_size and all(g[i][j] == ps * r + ps * (i == j) for i in c for j in c)]
    assert first, "missing leading block (p^s r + p^s delta)"
    rest = [c for c in comps if c is not first[0]]
    assert len(rest) == (p ** (n - s - 1) - 1) // r, "wrong number of p^s(1 + delta) blocks"
    for c in rest:
        assert len(c) == p - 1 and all(g[i][j] == ps * (1 + (i == j)) for i in c for j in c), "bad block"


def _block_order(g: Sequence[Sequence[int]]) -> list[int]:
    order: list[int] = []
    for c in _components(g):
        order.extend(c)
    return order


def semidirect_reduced_gram(modulus: PrimePowerModulus, subgroup: UnitSubgroup) -> list[list[int]]:
    """A^T A of the semidirect model over the fixed-field integral basis."""
    model = semidirect_model(modulus.p, modulus.n, subgroup.generator())
    basis = build_basis(modulus, subgroup)
    return la.gram_of_rows(semidirect_coefficients(model, basis), len(basis))


def semidirect_gram_sum(model: SemidirectModel, basis: FixedFieldBasis) -> int:
    """Dynkin-A pairing of A^T A, with the basis regrouped so blocks are contiguous."""
    from .qforms import dynkin_a, weighted_sum

    g = la.gram_of_rows(semidirect_coefficients(model, basis), len(basis))
    perm = _block_order(g)
    g = [[g[i][j] for j in perm] for i in perm]
    value = weighted_sum(dynkin_a(len(g)), g)
    assert value.denominator == 1
    return int(value)


def semidirect_gram_sum_check(model: SemidirectModel, basis: FixedFieldBasis) -> bool:
    p, n = model.modulus.p, model.modulus.n
    return semidirect_gram_sum(model, basis) == k0_semidirect(p, n, model.r, model.s)


# -- metacyclic model -----------------------------------------------------------


def _check_metacyclic_params(p: int, l1: int, l2: int, d: int) -> None:
    if p == 2 or (p - 1) % l1 or (p - 1) % l2:
        raise ValueError("need odd p with l1, l2 dividing p - 1")
    if d < 1 or gcd(l1, l2) % d:
        raise ValueError(f"d = {d} does not divide gcd(l1, l2) = {gcd(l1, l2)}")


def _element_of_order(order: int, q: int) -> int:
    for g in range(1, q):
        if gcd(g, q) == 1 and multiplicative_order(g, q) == order:
            return g
    raise ValueError(f"no unit of order {order} mod {q}")


@dataclass(frozen=True)
class MetacyclicRow:
    entries: tuple[CycInt, ...]
    multiplicity: int
    family: int


@dataclass(frozen=True)
class MetacyclicModel:
    p: int
    n1: int
    n2: int
    l1: int
    l2: int
    d: int
    gamma1: int
    gamma2: int
    rows: tuple[MetacyclicRow, ...]

    @property
    def modulus(self) -> PrimePowerModulus:
        return PrimePowerModulus(self.p, self.n1)

    @property
    def row_count(self) -> int:
        return sum(r.multiplicity for r in self.rows)

    def family_sizes(self) -> tuple[int, int, int, int]:
        sizes = [0, 0, 0, 0]
        for row in self.rows:
            sizes[row.family - 1] += row.multiplicity
        return tuple(sizes)

    def expected_family_sizes(self) -> tuple[int, int, int, int]:
        p, l1, l2, d = self.p, self.l1, self.l2, self.d
        a, b = p**self.n1 - 1, p**self.n2 - 1
        return (l1 * l2 // (d * d), l2 * a // l1, l1 * b // l2, a * b // (l1 * l2))


def metacyclic_q(
    p: int, n1: int, n2: int, l1: int, l2: int, d: int, gamma1: int | None = None, gamma2: int | None = None
) -> MetacyclicModel:
    """Generalized decomposition matrix of the twisted metacyclic model at u.

    Columns come in l2/d groups of d. Within a group, the partial-trace rows
    run through the d cyclic shifts of (tr_d(z^gamma1), ..., tr_d(z^gamma1^d)).
    """
    _check_metacyclic_params(p, l1, l2, d)
    q1, q2 = p**n1, p**n2
    gamma1 = _element_of_order(l1, q1) if gamma1 is None else gamma1 % q1
    gamma2 = _element_of_order(l2, q2) if gamma2 is None else gamma2 % q2
    if multiplicative_order(gamma1, q1) != l1 or multiplicative_order(gamma2, q2) != l2:
        raise ValueError("gamma_i must have exact order l_i")
    mod = PrimePowerModulus(p, n1)
    groups, per = l2 // d, l1 // d
    one = CycInt.integer(mod, 1)
    zero = CycInt.zero(mod)

    def tr_d(e: int) -> CycInt:
        return CycInt.from_exponents(mod, [e * pow(gamma1, j * d, q1) for j in range(1, per + 1)])

    def tr(e: int) -> CycInt:
        return CycInt.from_exponents(mod, [e * pow(gamma1, j, q1) for j in range(1, l1 + 1)])

    reps, seen = [], set()
    for a in range(1, q1):
        if a not in seen:
            seen.update(a * pow(gamma1, j, q1) % q1 for j in range(l1))
            reps.append(a)
    assert len(reps) == (q1 - 1) // l1

    rows: list[MetacyclicRow] = []
    for g in range(groups):
        entries = [zero] * l2
        for j in range(d):
            entries[g * d + j] = one
        rows.append(MetacyclicRow(tuple(entries), per, 1))
    for g in range(groups):
        for k in range(d):
            for a in reps:
                entries = [zero] * l2
                for j in range(d):
                    entries[g * d + j] = tr_d(a * pow(gamma1, j + k + 1, q1))
                rows.append(MetacyclicRow(tuple(entries), 1, 2))
    rows.append(MetacyclicRow((one,) * l2, l1 * (q2 - 1) // l2, 3))
    for a in reps:
        rows.append(MetacyclicRow((tr(a),) * l2, (q2 - 1) // l2, 4))
    return MetacyclicModel(p, n1, n2, l1, l2, d, gamma1, gamma2, tuple(rows))


def metacyclic_column_gram(model: MetacyclicModel) -> list[list[CycInt]]:
    """Q^T conj(Q) with row multiplicities, as cyclotomic integers."""
    l2 = model.l2
    mod = model.modulus
    out = [[CycInt.zero(mod) for _ in range(l2)] for _ in range(l2)]
    for row in model.rows:
        conjs = [e.conj() for e in row.entries]
        for i in range(l2):
            if not row.entries[i]:
                continue
            for j in range(l2):
                if conjs[j]:
                    out[i][j] = out[i][j] + row.entries[i] * conjs[j] * row.multiplicity
    return out


def verify_orthogonality(model: MetacyclicModel) -> bool:
    """Columns must have Gram p^n1 (t + delta), t = (p^n2 - 1)/l2."""
    t = (model.p**model.n2 - 1) // model.l2
    scale = model.p**model.n1
    gram = metacyclic_column_gram(model)
    for i in range(model.l2):
        for j in range(model.l2):
            if gram[i][j] != CycInt.integer(model.modulus, scale * (t + (i == j))):
                return False
    return True


def perturbed(model: MetacyclicModel, row_index: int, delta: int = 1) -> MetacyclicModel:
    rows = list(model.rows)
    r = rows[row_index]
    rows[row_index] = MetacyclicRow(r.entries, r.multiplicity + delta, r.family)
    return MetacyclicModel(**{**model.__dict__, "rows": tuple(rows)})


def metacyclic_basis(model: MetacyclicModel) -> FixedFieldBasis:
    mod = model.modulus
    return build_basis(mod, subgroup_from_generator(mod, pow(model.gamma1, model.d, mod.order)))


def metacyclic_coefficient_gram(model: MetacyclicModel) -> GramMatrix:
    """Block matrix (A_{1+id}^T A_{1+jd})_{i,j} over the fixed-field basis."""
    basis = metacyclic_basis(model)
    t = len(basis)
    groups = model.l2 // model.d
    cols = [g * model.d for g in range(groups)]
    out = [[0] * (groups * t) for _ in range(groups * t)]
    for row in model.rows:
        coords = [express(row.entries[c], basis) for c in cols]
        for gi in range(groups):
            for gj in range(groups):
                ai, aj = coords[gi], coords[gj]
                for x in range(t):
                    if ai[x]:
                        for y in range(t):
                            out[gi * t + x][gj * t + y] += row.multiplicity * ai[x] * aj[y]
    return GramMatrix(out)


def metacyclic_class_count(p: int, n1: int, n2: int, l1: int, l2: int, d: int,
                           gamma1: int | None = None, gamma2: int | None = None,
                           cap: int = ORACLE_ORDER_CAP) -> int:
    """|Irr(G | lambda)| for the model group and a faithful lambda of <x^l1>.

    Counts orbits of the central subgroup <x^l1> on conjugacy classes of G,
    keeping only classes C with C z != C for every z != 1.
    """
    _check_metacyclic_params(p, l1, l2, d)
    q1, q2, ex = p**n1, p**n2, d * l1
    gamma1 = _element_of_order(l1, q1) if gamma1 is None else gamma1 % q1
    gamma2 = _element_of_order(l2, q2) if gamma2 is None else gamma2 % q2
    order = q1 * q2 * ex * l2
    if order > cap:
        raise CapExceeded(f"group order {order} exceeds cap {cap}")
    g1 = [pow(gamma1, c, q1) for c in range(ex)]
    g2 = [pow(gamma2, e, q2) for e in range(l2)]
    tw = [pow(1 + l1, e, ex) for e in range(l2)]

    def mult(a, b):
        return (
            (a[0] + g1[a[2]] * b[0]) % q1,
            (a[1] + g2[a[3]] * b[1]) % q2,
            (a[2] + tw[a[3]] * b[2]) % ex,
            (a[3] + b[3]) % l2,
        )

    elements = [(a, b, c, e) for a in range(q1) for b in range(q2) for c in range(ex) for e in range(l2)]
    gens = [(1, 0, 0, 0), (0, 1 % q2, 0, 0), (0, 0, 1 % ex, 0), (0, 0, 0, 1 % l2)]
    classes = _conjugacy_classes(elements, mult, gens, (0, 0, 0, 0))
    index = {}
    for i, cls in enumerate(classes):
        for h in cls:
            index[h] = i
    z = (0, 0, l1 % ex, 0)
    good = 0
    for i, cls in enumerate(classes):
        h, shifted = cls[0], []
        y = h
        for _ in range(d - 1):
            y = mult(y, z)
            shifted.append(index[y])
        if i not in shifted:
            good += 1
    assert good % d == 0
    return good // d
