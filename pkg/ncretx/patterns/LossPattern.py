# -*- coding: utf-8 -*-
from typing import Iterable, Set

from ncretx.base.utils import MAX_RECEIVERS, popcount, iter_bits, receivers_to_mask, mask_to_string, \
    string_to_mask


class LossPattern(object):
    """Receive state of one packet at every receiver: bit i is 1 iff receiver i holds it.

    Stored as an integer bitmask; receiver ids are 1-based."""

    def __init__(self, n: int, mask: int=0):
        if not 1 <= n <= MAX_RECEIVERS:
            raise ValueError("receiver count must be in 1..%d, got %r" % (MAX_RECEIVERS, n))
        if mask < 0 or mask >> n:
            raise ValueError("mask %r does not fit %d receivers" % (mask, n))
        self.n = n
        self.mask = mask

    @staticmethod
    def fromString(s: str):
        """'011' --> receiver 1 lost, receivers 2 and 3 hold the packet."""
        return LossPattern(len(s), string_to_mask(s))

    @staticmethod
    def fromReceivers(n: int, receivers: Iterable[int]):
        return LossPattern(n, receivers_to_mask(receivers, n))

    @staticmethod
    def zero(n: int):
        return LossPattern(n, 0)

    @staticmethod
    def full(n: int):
        return LossPattern(n, (1 << n) - 1)

    def weight(self) -> int:
        return popcount(self.mask)

    def holds(self, receiver: int) -> bool:
        if not 1 <= receiver <= self.n:
            raise ValueError("receiver id %r out of range 1..%d" % (receiver, self.n))
        return bool(self.mask >> (receiver - 1) & 1)

    def ones(self) -> Set[int]:
        return set(iter_bits(self.mask))

    def zeros(self) -> Set[int]:
        return set(iter_bits(~self.mask & ((1 << self.n) - 1)))

    def is_full(self) -> bool:
        return self.mask == (1 << self.n) - 1

    def with_receivers(self, receivers: Iterable[int]):
        return LossPattern(self.n, self.mask | receivers_to_mask(receivers, self.n))

    def __xor__(self, other):
        if not isinstance(other, LossPattern):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("pattern lengths differ: %d vs %d" % (self.n, other.n))
        return LossPattern(self.n, self.mask ^ other.mask)

    def __str__(self):
        return mask_to_string(self.mask, self.n)

    def __repr__(self):
        return "LossPattern(%s)" % str(self)

    def _members(self):
        return (self.n, self.mask)

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())

    def __lt__(self, other):
        return (self.weight(), self.mask) < (other.weight(), other.mask)
