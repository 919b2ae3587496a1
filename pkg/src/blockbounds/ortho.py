"""Refined orthogonality matrix M of a subsection.

M is assembled from blocks A_{sigma tau} of size m = p^(n-1)(p-1), one per
pair of Brauer characters, whose entries are signed counts over the
stabiliser N_tau. Row/column (sigma, i) of M sits at index sigma*m + i
(both 0-based).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import _linalg as la
from .cyclotomic import PrimePowerModulus, UnitSubgroup, subgroup_from_generators
from .gram import GramMatrix


class ActionCartanMismatch(ValueError):
    """The Cartan matrix is not invariant under the action on Brauer characters."""


class InvalidSpec(ValueError):
    pass


Perm = tuple[int, ...]


@dataclass(frozen=True)
class SubsectionSpec:
    """Input data for building M.

    ``action`` maps every element of the subgroup to a 0-based permutation
    of the Brauer-character indices.
    """

    modulus: PrimePowerModulus
    cartan: tuple[tuple[int, ...], ...]
    subgroup: UnitSubgroup
    action: Mapping[int, Perm]

    @property
    def l(self) -> int:
        return len(self.cartan)

    @classmethod
    def create(
        cls,
        p: int,
        n: int,
        cartan: Sequence[Sequence[int]],
        generators: Sequence[int] = (),
        action: Sequence[Sequence[int]] | None = None,
    ) -> SubsectionSpec:
        """Build a spec from generator residues and their 1-based permutation images."""
        modulus = PrimePowerModulus(p, n)
        c = la.to_int_matrix(cartan)
        l = len(c)
        if l == 0 or any(len(r) != l for r in c):
            raise InvalidSpec("Cartan matrix must be square and non-empty")
        if not la.is_symmetric(c):
            raise InvalidSpec("Cartan matrix is not symmetric")
        if not la.is_pd(c):
            raise InvalidSpec("Cartan matrix is not positive definite")
        d = la.det(c)
        if not _is_power_of(d, p):
            warnings.warn(f"det(Cartan) = {d} is not a power of {p}", stacklevel=2)
        q = modulus.order
        gens = [g % q for g in generators]
        if action is None:
            action = [list(range(1, l + 1)) for _ in gens]
        if len(action) != len(gens):
            raise InvalidSpec("need one permutation per subgroup generator")
        gen_perms = []
        for img in action:
            perm = tuple(int(x) - 1 for x in img)
            if sorted(perm) != list(range(l)):
                raise InvalidSpec(f"{list(img)} is not a permutation of 1..{l}")
            gen_perms.append(perm)
        subgroup = subgroup_from_generators(modulus, gens)
        return cls(modulus, tuple(tuple(r) for r in c), subgroup, _extend_action(q, gens, gen_perms, l))

    def act(self, gamma: int, tau: int) -> int:
        return self.action[gamma % self.modulus.order][tau]

    def stabilizer(self, tau: int) -> list[int]:
        return [g for g in self.subgroup.elements if self.action[g][tau] == tau]

    def is_trivial_action(self) -> bool:
        ident = tuple(range(self.l))
        return all(p == ident for p in self.action.values())


def _is_power_of(d, p: int) -> bool:
    if d < 1 or int(d) != d:
        return False
    d = int(d)
    while d % p == 0:
        d //= p
    return d == 1


def _extend_action(q: int, gens: list[int], perms: list[Perm], l: int) -> dict[int, Perm]:
    one = 1 % q
    action: dict[int, Perm] = {one: tuple(range(l))}
    frontier = [one]
    while frontier:
        nxt = []
        for a in frontier:
            pa = action[a]
            for g, pg in zip(gens, perms):
                b = a * g % q
                pb = tuple(pa[pg[t]] for t in range(l))
                if b in action:
                    if action[b] != pb:
                        raise InvalidSpec("permutation images do not define a homomorphism")
                else:
                    action[b] = pb
                    nxt.append(b)
        frontier = nxt
    return action


def neg_residue(i: int, modulus: PrimePowerModulus) -> int:
    """The i' in {1, ..., p^(n-1)} with -i = i' mod p^(n-1)."""
    step = modulus.order // modulus.p
    return (-i - 1) % step + 1


def _w(i: int, j: int, gamma: int, stab: Sequence[int], modulus: PrimePowerModulus) -> int:
    q = modulus.order
    ip, jp = neg_residue(i, modulus), neg_residue(j, modulus)
    total = 0
    for delta in stab:
        gd = gamma * delta
        total += ((i - j * gd) % q == 0) - ((i + jp * gd) % q == 0)
        total += ((ip - jp * gd) % q == 0) - ((ip + j * gd) % q == 0)
    return total


def w_count(i: int, j: int, tau: int, gamma: int, spec: SubsectionSpec) -> int:
    """Signed count over delta in the stabiliser of ``tau`` (0-based index)."""
    if gamma % spec.modulus.order not in spec.subgroup:
        raise ValueError(f"{gamma} is not in the subgroup")
    return _w(i, j, gamma, spec.stabilizer(tau), spec.modulus)


def _coset_reps(elements: Sequence[int], stab: Sequence[int], q: int) -> list[int]:
    reps, covered = [], set()
    for g in elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(g * d % q for d in stab)
    return reps


def check_invariance(spec: SubsectionSpec) -> None:
    c = spec.cartan
    for g, perm in spec.action.items():
        for s in range(spec.l):
            for t in range(spec.l):
                if c[s][t] != c[perm[s]][perm[t]]:
                    raise ActionCartanMismatch(
                        f"c[{s + 1}][{t + 1}] = {c[s][t]} but c[{perm[s] + 1}][{perm[t] + 1}] = "
                        f"{c[perm[s]][perm[t]]} under gamma = {g}"
                    )


def build_blocks(spec: SubsectionSpec) -> dict[tuple[int, int], list[list[int]]]:
    spec.modulus.require_odd()
    check_invariance(spec)
    mod = spec.modulus
    m, q, l = mod.m, mod.order, spec.l
    c = spec.cartan
    elements = spec.subgroup.elements
    blocks = {}
    for tau in range(l):
        stab = spec.stabilizer(tau)
        reps = _coset_reps(elements, stab, q)
        # w-tables depend only on (tau, gamma)
        tables = {g: [[_w(i, j, g, stab, mod) for j in range(m)] for i in range(m)] for g in reps}
        for sigma in range(l):
            blk = [[0] * m for _ in range(m)]
            for g in reps:
                coeff = c[sigma][spec.act(g, tau)]
                if coeff:
                    w = tables[g]
                    for i in range(m):
                        row, wi = blk[i], w[i]
                        for j in range(m):
                            row[j] += coeff * wi[j]
            blocks[sigma, tau] = blk
    return blocks


def build_m(spec: SubsectionSpec) -> GramMatrix:
    blocks = build_blocks(spec)
    m, l = spec.modulus.m, spec.l
    for (s, t), blk in blocks.items():
        assert blk == la.transpose(blocks[t, s]), "block symmetry violated"
        for perm in spec.action.values():
            assert blk == blocks[perm[s], perm[t]], "block invariance violated"
    out = [[0] * (m * l) for _ in range(m * l)]
    for (s, t), blk in blocks.items():
        for i in range(m):
            out[s * m + i][t * m : (t + 1) * m] = blk[i]
    return GramMatrix(out)


def block_of(mat: GramMatrix | Sequence[Sequence[int]], sigma: int, tau: int, m: int) -> list[list[int]]:
    return [list(mat[sigma * m + i][tau * m : (tau + 1) * m]) for i in range(m)]


def build_m_stable(spec: SubsectionSpec) -> GramMatrix:
    """C-bar tensor T for a trivial action, T the reduced semidirect-model Gram."""
    from .models import semidirect_reduced_gram

    if not spec.is_trivial_action():
        raise ValueError("stable-case construction needs a trivial action on Brauer characters")
    spec.modulus.require_odd()
    t = semidirect_reduced_gram(spec.modulus, spec.subgroup)
    return GramMatrix(la.kron(spec.cartan, t))
