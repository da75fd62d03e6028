# -*- coding: utf-8 -*-
from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

from ncretx.base.utils import MAX_RECEIVERS


class TopologyKind(Enum):
    X = "x"
    WHEEL = "wheel"
    UNICAST = "unicast"

    @staticmethod
    def fromString(s: str):
        try:
            return TopologyKind(s.strip().lower())
        except ValueError:
            raise ValueError("unknown topology %r, expected one of %s"
                             % (s, ", ".join(t.value for t in TopologyKind)))


class Topology(object):
    """Flows through the coding node: flow i goes from source S_i to receiver R_i.

    overhear[i] is the set of flows whose source receiver i hears without loss.
    Only the relevant pair overhears, each the other's source."""

    def __init__(self, kind: TopologyKind, n: int, relevant: Optional[Tuple[int, int]]=None):
        if not 1 <= n <= MAX_RECEIVERS:
            raise ValueError("receiver count must be in 1..%d, got %r" % (MAX_RECEIVERS, n))
        if kind is TopologyKind.X:
            if n != 2:
                raise ValueError("the X topology has exactly 2 receivers, got %d" % n)
            relevant = (1, 2)
        elif kind is TopologyKind.WHEEL:
            if n <= 2:
                raise ValueError("a wheel needs more than 2 receivers, got %d" % n)
            relevant = relevant or (1, 2)
            r1, r2 = relevant
            if not 1 <= r1 < r2 <= n:
                raise ValueError("relevant receivers must satisfy 1 <= r1 < r2 <= %d, got %r" % (n, relevant))
        else:
            if relevant is not None:
                raise ValueError("a unicast topology has no relevant flows")
        self.kind = kind
        self.n = n
        self.relevant = tuple(relevant) if relevant is not None else None

        self.overhear = {r: frozenset() for r in range(1, n + 1)}    # type: Dict[int, FrozenSet[int]]
        if self.relevant is not None:
            r1, r2 = self.relevant
            self.overhear[r1] = frozenset([r2])
            self.overhear[r2] = frozenset([r1])

    @staticmethod
    def x():
        return Topology(TopologyKind.X, 2)

    @staticmethod
    def wheel(n: int, r1: int=1, r2: int=2):
        return Topology(TopologyKind.WHEEL, n, (r1, r2))

    @staticmethod
    def unicast(n: int):
        return Topology(TopologyKind.UNICAST, n)

    @staticmethod
    def fromKind(kind: TopologyKind, n: int, r1: int=1, r2: int=2):
        if kind is TopologyKind.X:
            return Topology(kind, n)
        if kind is TopologyKind.WHEEL:
            return Topology.wheel(n, r1, r2)
        return Topology.unicast(n)

    def is_relevant(self, receiver: int) -> bool:
        return self.relevant is not None and receiver in self.relevant

    def irrelevant(self) -> Tuple[int, ...]:
        return tuple(r for r in range(1, self.n + 1) if not self.is_relevant(r))

    def _members(self):
        return (self.kind, self.n, self.relevant)

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())

    def __str__(self):
        if self.relevant is None:
            return "%s(n=%d)" % (self.kind.value, self.n)
        return "%s(n=%d, relevant=%d,%d)" % (self.kind.value, self.n, self.relevant[0], self.relevant[1])
