# -*- coding: utf-8 -*-
import re
from typing import Iterable


class Combination(object):
    """A GF(2) vector over native packet ids: the XOR of the packets in its support."""

    def __init__(self, support: Iterable[int]):
        support = frozenset(support)
        if not support:
            raise ValueError("a combination needs at least one native packet")
        for pid in support:
            if not isinstance(pid, int) or pid < 1:
                raise ValueError("native packet ids are positive integers, got %r" % (pid,))
        self.support = support

    @staticmethod
    def native(pid: int):
        return Combination([pid])

    @staticmethod
    def fromString(s: str):
        """'P1+P2+P3' --> the XOR of natives 1, 2 and 3."""
        terms = [t.strip() for t in s.split("+")]
        if any(re.fullmatch(r"P[1-9][0-9]*", t) is None for t in terms):
            raise ValueError("not a combination: %r" % s)
        ids = [int(t[1:]) for t in terms]
        if len(set(ids)) != len(ids):
            raise ValueError("repeated packet in %r" % s)
        return Combination(ids)

    def is_native(self) -> bool:
        return len(self.support) == 1

    def __xor__(self, other):
        if not isinstance(other, Combination):
            return NotImplemented
        return Combination(self.support ^ other.support)

    def __len__(self):
        return len(self.support)

    def __iter__(self):
        return iter(sorted(self.support))

    def __contains__(self, pid):
        return pid in self.support

    def __str__(self):
        return "+".join("P%d" % pid for pid in sorted(self.support))

    def __repr__(self):
        return "Combination(%s)" % str(self)

    def _members(self):
        return self.support

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())

    def __lt__(self, other):
        return sorted(self.support) < sorted(other.support)
