# -*- coding: utf-8 -*-
from typing import Sequence, Tuple

from ncretx.base.utils import MAX_RECEIVERS, parse_csv_floats


class ChannelModel(object):
    """Independent Bernoulli erasures: receiver i loses each broadcast with probability omega_i."""

    def __init__(self, omegas: Sequence[float]):
        omegas = tuple(float(w) for w in omegas)
        if not 1 <= len(omegas) <= MAX_RECEIVERS:
            raise ValueError("receiver count must be in 1..%d, got %d" % (MAX_RECEIVERS, len(omegas)))
        for i, w in enumerate(omegas, 1):
            if not 0.0 <= w < 1.0:
                raise ValueError("loss probability of receiver %d must be in [0, 1), got %r" % (i, w))
        self.omegas = omegas

    @staticmethod
    def fromString(s: str):
        return ChannelModel(parse_csv_floats(s))

    @staticmethod
    def uniform(n: int, omega: float):
        return ChannelModel([omega] * n)

    @property
    def n(self) -> int:
        return len(self.omegas)

    def omega(self, receiver: int) -> float:
        if not 1 <= receiver <= self.n:
            raise ValueError("receiver id %r out of range 1..%d" % (receiver, self.n))
        return self.omegas[receiver - 1]

    def is_sorted(self) -> bool:
        return all(a <= b for a, b in zip(self.omegas, self.omegas[1:]))

    def sorted(self) -> Tuple["ChannelModel", Tuple[int, ...]]:
        """Ascending copy plus the permutation: new receiver j was old receiver perm[j - 1]."""
        perm = tuple(sorted(range(1, self.n + 1), key=lambda r: (self.omegas[r - 1], r)))
        return ChannelModel([self.omegas[r - 1] for r in perm]), perm

    def without(self, receivers) -> Tuple[float, ...]:
        """Rates of the remaining receivers, in receiver order."""
        skip = set(receivers)
        return tuple(w for r, w in enumerate(self.omegas, 1) if r not in skip)

    def check_receivers(self, n: int):
        if n != self.n:
            raise ValueError("channel has %d receivers, expected %d" % (self.n, n))

    def __str__(self):
        return ",".join(repr(w) for w in self.omegas)

    def __repr__(self):
        return "ChannelModel(%s)" % str(self)

    def _members(self):
        return self.omegas

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())
