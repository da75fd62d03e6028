# -*- coding: utf-8 -*-
from typing import Sequence

from ncretx.patterns.ChannelModel import ChannelModel


class WheelConfig(object):
    """A wheel: n > 2 receivers, relevant pair (r1, r2) coded in the original phase, k packets per flow."""

    def __init__(self, n: int, omegas: ChannelModel, r1: int, r2: int, k: int):
        if n <= 2:
            raise ValueError("a wheel needs more than 2 receivers, got %d" % n)
        omegas.check_receivers(n)
        if not 1 <= r1 < r2 <= n:
            raise ValueError("relevant receivers must satisfy 1 <= r1 < r2 <= %d, got (%d, %d)" % (n, r1, r2))
        if omegas.omega(r1) > omegas.omega(r2):
            raise ValueError("receiver r1=%d must not be lossier than r2=%d; use WheelConfig.normalized"
                             % (r1, r2))
        if k < 1:
            raise ValueError("packets per flow must be at least 1, got %d" % k)
        self.n = n
        self.omegas = omegas
        self.r1 = r1
        self.r2 = r2
        self.k = k

    @staticmethod
    def normalized(omegas: Sequence[float], r1: int=1, r2: int=2, k: int=1):
        """Sort the rates ascending and follow the relevant receivers to their new ids."""
        ch, perm = ChannelModel(omegas).sorted()
        for r in (r1, r2):
            if r not in perm:
                raise ValueError("relevant receiver %r out of range 1..%d" % (r, ch.n))
        new_ids = sorted([perm.index(r1) + 1, perm.index(r2) + 1])
        return WheelConfig(ch.n, ch, new_ids[0], new_ids[1], k)

    def _members(self):
        return (self.n, self.omegas, self.r1, self.r2, self.k)

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())

    def __repr__(self):
        return "WheelConfig(n=%d, omegas=(%s), r1=%d, r2=%d, k=%d)" % (self.n, self.omegas, self.r1, self.r2, self.k)
