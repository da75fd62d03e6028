# -*- coding: utf-8 -*-
"""Loss-pattern algebra: weights, transfers between patterns and their probabilities."""
from typing import Iterable, List

from ncretx.base.errors import TransferError
from ncretx.base.utils import powerset, receivers_to_mask
from ncretx.patterns.ChannelModel import ChannelModel
from ncretx.patterns.LossPattern import LossPattern


def weight(p: LossPattern) -> int:
    return p.weight()


def pattern_xor(p: LossPattern, q: LossPattern) -> LossPattern:
    return p ^ q


def _check_lengths(p: LossPattern, q: LossPattern):
    if p.n != q.n:
        raise ValueError("pattern lengths differ: %d vs %d" % (p.n, q.n))


def can_transfer(p: LossPattern, q: LossPattern) -> bool:
    """True iff a retransmission of a packet in state p can leave it in the heavier state q.

    Receivers never lose a packet they hold, so q must keep every 1 of p."""
    _check_lengths(p, q)
    return p.mask & ~q.mask == 0 and q.weight() > p.weight()


def conditional_transfer_probability(p: LossPattern, q: LossPattern, ch: ChannelModel) -> float:
    """Pr{q | p} for one broadcast: frozen receivers contribute 1, the others succeed or fail independently."""
    _check_lengths(p, q)
    ch.check_receivers(p.n)
    if p != q and not can_transfer(p, q):
        raise TransferError("no transfer from %s to %s" % (p, q))
    prob = 1.0
    for r in p.zeros():
        w = ch.omega(r)
        prob *= (1.0 - w) if q.holds(r) else w
    return prob


def pattern_probability(p: LossPattern, ch: ChannelModel) -> float:
    """Probability that a single broadcast leaves exactly state p."""
    return conditional_transfer_probability(LossPattern.zero(p.n), p, ch)


def reachable_patterns(p: LossPattern) -> List[LossPattern]:
    """p itself and every pattern it can transfer to."""
    return [LossPattern(p.n, p.mask | receivers_to_mask(extra, p.n)) for extra in powerset(p.zeros())]


def _as_int(p: LossPattern, receivers: List[int]) -> int:
    # receivers[0] is the most significant bit
    value = 0
    for r in receivers:
        value = value << 1 | p.holds(r)
    return value


def enumerate_patterns(n: int, intended: Iterable[int]) -> List[LossPattern]:
    """All n-receiver patterns in which some intended receiver still lacks the packet.

    Ordered by weight, then by the bits of the other receivers, then by the intended bits."""
    intended = sorted(set(intended))
    if not intended:
        raise ValueError("at least one intended receiver is required")
    intended_mask = receivers_to_mask(intended, n)
    others = [r for r in range(1, n + 1) if r not in intended]
    patterns = [LossPattern(n, m) for m in range(1 << n) if intended_mask & ~m]
    return sorted(patterns, key=lambda p: (p.weight(), _as_int(p, others), _as_int(p, intended)))
