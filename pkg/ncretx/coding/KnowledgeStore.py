# -*- coding: utf-8 -*-
from typing import Dict, FrozenSet, Iterable, List, Set

from ncretx.coding.Combination import Combination


class KnowledgeStore(object):
    """What one receiver can compute: a reduced row-echelon basis over GF(2).

    Every row is keyed by a pivot packet id that appears in no other row,
    so reducing a vector is one XOR per pivot in its support."""

    def __init__(self, combinations: Iterable[Combination]=()):
        self._rows = {}     # type: Dict[int, FrozenSet[int]]
        self._occurs = {}   # type: Dict[int, Set[int]]
        for c in combinations:
            self.add(c)

    def _reduce(self, vector: FrozenSet[int]) -> FrozenSet[int]:
        residue = set(vector)
        for pid in vector:
            row = self._rows.get(pid)
            if row is not None:
                residue ^= row
        return frozenset(residue)

    def add(self, c: Combination) -> bool:
        """Insert c; False when it was already in the span."""
        residue = self._reduce(c.support)
        if not residue:
            return False
        pivot = min(residue)
        for owner in list(self._occurs.get(pivot, ())):
            new_row = self._rows[owner] ^ residue
            for pid in residue:
                if pid in new_row:
                    self._occurs.setdefault(pid, set()).add(owner)
                else:
                    self._occurs[pid].discard(owner)
            self._rows[owner] = new_row
        self._rows[pivot] = residue
        for pid in residue:
            self._occurs.setdefault(pid, set()).add(pivot)
        return True

    def contains(self, c: Combination) -> bool:
        return not self._reduce(c.support)

    def decodable(self, target: int) -> bool:
        return not self._reduce(frozenset([target]))

    def would_decode(self, c: Combination, target: int) -> bool:
        """True iff adding c makes the native target decodable when it is not yet."""
        residue = self._reduce(c.support)
        return bool(residue) and self._reduce(frozenset([target])) == residue

    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> List[Combination]:
        return [Combination(self._rows[p]) for p in sorted(self._rows)]

    def copy(self):
        other = KnowledgeStore()
        other._rows = dict(self._rows)
        other._occurs = {pid: set(owners) for pid, owners in self._occurs.items()}
        return other

    def __len__(self):
        return self.rank()

    def __str__(self):
        return "{" + ", ".join(map(str, self.basis())) + "}"
