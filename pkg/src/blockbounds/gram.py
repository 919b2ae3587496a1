from __future__ import annotations

from typing import Iterator, Sequence

from . import _linalg as la


class NotPSD(ValueError):
    """Matrix is not symmetric positive semidefinite."""


class GramMatrix:
    """Symmetric positive semidefinite integer matrix (immutable)."""

    __slots__ = ("_rows",)

    def __init__(self, entries: Sequence[Sequence[int]], *, check: bool = True):
        rows = la.to_int_matrix(entries)
        if check:
            if not la.is_symmetric(rows):
                raise NotPSD("matrix is not symmetric")
            if la.psd_rank(rows) is None:
                raise NotPSD("matrix is not positive semidefinite")
        self._rows = tuple(tuple(r) for r in rows)

    @classmethod
    def coerce(cls, m) -> GramMatrix:
        return m if isinstance(m, GramMatrix) else cls(m)

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, i):
        return self._rows[i]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other) -> bool:
        if isinstance(other, GramMatrix):
            return self._rows == other._rows
        try:
            return self._rows == tuple(tuple(r) for r in other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"GramMatrix({self.to_list()})"

    def __str__(self) -> str:
        if not self._rows:
            return "()"
        width = max(len(str(x)) for r in self._rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self._rows)

    def trace(self) -> int:
        return sum(self._rows[i][i] for i in range(self.size))

    def rank(self) -> int:
        return la.psd_rank(self._rows)

    def det(self) -> int:
        return la.det(self._rows)

    def is_positive_definite(self) -> bool:
        return self.rank() == self.size
