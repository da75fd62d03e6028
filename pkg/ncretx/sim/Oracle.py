# -*- coding: utf-8 -*-
"""Exact expectations for small instances, by solving absorbing Markov chains.

A chain is given by a step function returning (next state, probability) pairs;
the expected reward collected before absorption solves (I - Q) v = r over the
transient states reachable from the initial ones."""
import logging
from collections import OrderedDict, deque
from itertools import product as cartesian
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix, identity
from scipy.sparse.linalg import spsolve

from ncretx.base.errors import StateSpaceOverflowError, TransferError
from ncretx.base.utils import iter_bits, popcount
from ncretx.coding.Combination import Combination
from ncretx.coding.PatternSet import PatternSet
from ncretx.patterns.ChannelModel import ChannelModel
from ncretx.patterns.LossPattern import LossPattern
from ncretx.patterns.Patterns import can_transfer, conditional_transfer_probability
from ncretx.sim.Scheme import Scheme
from ncretx.sim.Simulator import Simulator
from ncretx.sim.Topology import Topology

logger = logging.getLogger(__name__)

DEFAULT_STATE_CAP = 10 ** 6
MAX_ORACLE_RECEIVERS = 3
MAX_ORACLE_PACKETS_PER_FLOW = 3

# a lost packet seen by the oracle: (pattern mask, intended receivers mask)
Item = Tuple[int, int]


def solve_absorbing(initial: Iterable[Hashable],
                    step: Callable[[Hashable], Iterable[Tuple[Hashable, float]]],
                    reward: Callable[[Hashable], float],
                    absorbing: Callable[[Hashable], bool],
                    cap: int=DEFAULT_STATE_CAP) -> Dict[Hashable, float]:
    """Expected total reward until absorption, for each initial state."""
    initial = list(initial)
    index = OrderedDict()
    pending = deque()

    def visit(s):
        if absorbing(s) or s in index:
            return
        if len(index) >= cap:
            raise StateSpaceOverflowError(cap)
        index[s] = len(index)
        pending.append(s)

    for s in initial:
        visit(s)
    rows, cols, probs = [], [], []
    while pending:
        s = pending.popleft()
        for t, p in step(s):
            if p == 0.0:
                continue
            visit(t)
            if not absorbing(t):
                rows.append(index[s])
                cols.append(index[t])
                probs.append(p)

    dim = len(index)
    logger.debug("[Oracle] %d transient states" % dim)
    if dim == 0:
        return OrderedDict((s, 0.0) for s in initial)
    q = coo_matrix((probs, (rows, cols)), shape=(dim, dim)).tocsr()
    a = (identity(dim, format="csr") - q).tocsc()
    r = np.array([reward(s) for s in index], dtype=float)
    v = np.atleast_1d(spsolve(a, r))
    return OrderedDict((s, 0.0 if absorbing(s) else float(v[index[s]])) for s in initial)


def _countdown(or_size: int, stay: float, reward_per_slot: float, cap: int) -> float:
    if or_size < 0 or int(or_size) != or_size:
        raise ValueError("or_size must be a non-negative integer, got %r" % or_size)
    values = solve_absorbing([int(or_size)],
                             lambda c: [(c - 1, 1.0 - stay), (c, stay)],
                             lambda c: reward_per_slot,
                             lambda c: c == 0, cap)
    return values[int(or_size)]


def oracle_expected_rescue(or_size: int, p: LossPattern, ch: ChannelModel, cap: int=DEFAULT_STATE_CAP) -> float:
    """Slots to empty a pool of or_size packets in state p, one packet per slot."""
    ch.check_receivers(p.n)
    if p.is_full():
        raise ValueError("pattern %s has no receiver left to rescue" % p)
    stay = conditional_transfer_probability(p, p, ch)
    return _countdown(or_size, stay, 1.0, cap)


def oracle_expected_transfer(or_size: int, p: LossPattern, q: LossPattern, ch: ChannelModel,
                             cap: int=DEFAULT_STATE_CAP) -> float:
    """Packets of the pool that land in q, collected slot by slot while the pool empties."""
    if not can_transfer(p, q):
        raise TransferError("no transfer from %s to %s" % (p, q))
    stay = conditional_transfer_probability(p, p, ch)
    return _countdown(or_size, stay, conditional_transfer_probability(p, q, ch), cap)


class _PatternChain(object):
    """Joint pattern state of every lost packet; one slot per step.

    Each slot sends the first transmission the simulator would schedule for the
    current pools. A receiver that gets the XOR learns a member's packet iff it
    holds all the other members, and it keeps it only under the scheme's storage policy."""

    def __init__(self, topology: Topology, ch: ChannelModel, scheme: Scheme, strict_groups: bool):
        self.n = topology.n
        self.ch = ch
        self.scheme = scheme
        self.planner = Simulator(topology, ch, 1, scheme, strict_groups)
        self.outcomes = []
        for bits in cartesian((0, 1), repeat=self.n):
            prob = 1.0
            mask = 0
            for j, ok in enumerate(bits):
                prob *= (1.0 - ch.omegas[j]) if ok else ch.omegas[j]
                mask |= ok << j
            if prob > 0.0:
                self.outcomes.append((mask, prob))

    def canonical(self, items: Iterable[Item]) -> Tuple[Item, ...]:
        res = []
        for mask, intended in items:
            needing = intended & ~mask
            if not needing:
                continue
            if self.scheme is Scheme.NC_ARQ and popcount(intended) > 1 and popcount(needing) == 1:
                intended = needing
            res.append((mask, intended))
        return tuple(sorted(res))

    def _first_transmission(self, state: Tuple[Item, ...]) -> List[int]:
        by_key = OrderedDict()
        for i, (mask, intended) in enumerate(state):
            by_key.setdefault((intended, mask), []).append(i)
        pools = []
        for (intended, mask), idx in by_key.items():
            pools.append(PatternSet(LossPattern(self.n, mask), [Combination.native(i + 1) for i in idx],
                                    tuple(iter_bits(intended))))
        members = self.planner.schedule(pools)[0]
        chosen = []
        for m in members:
            i = next(iter(m.packets[0])) - 1
            if m.intended_mask & ~state[i][0]:
                chosen.append(i)
        return chosen

    def step(self, state: Tuple[Item, ...]):
        chosen = self._first_transmission(state)
        coded_payload = len(chosen) > 1 or popcount(state[chosen[0]][1]) > 1
        res = []
        for received, prob in self.outcomes:
            items = list(state)
            for i in chosen:
                mask, intended = state[i]
                for j in iter_bits(received):
                    bit = 1 << (j - 1)
                    if mask & bit:
                        continue
                    if any(not state[k][0] & bit for k in chosen if k != i):
                        continue
                    if coded_payload and not self.scheme.stores_coded and not intended & bit:
                        continue
                    mask |= bit
                items[i] = (mask, intended)
            res.append((self.canonical(items), prob))
        return res


def _infer_topology(n: int, tags: Iterable[Tuple[int, ...]]) -> Topology:
    coded = sorted(set(t for t in tags if len(t) > 1))
    if not coded:
        return Topology.unicast(n)
    if len(coded) > 1 or len(coded[0]) != 2:
        raise ValueError("coded packets must all belong to one relevant pair, got %r" % coded)
    if n == 2:
        return Topology.x()
    return Topology.wheel(n, *coded[0])


def _check_small(n: int, packets: int):
    if n > MAX_ORACLE_RECEIVERS:
        raise ValueError("the oracle handles at most %d receivers, got %d" % (MAX_ORACLE_RECEIVERS, n))
    if packets > MAX_ORACLE_RECEIVERS * MAX_ORACLE_PACKETS_PER_FLOW:
        raise ValueError("the oracle handles at most %d lost packets, got %d"
                         % (MAX_ORACLE_RECEIVERS * MAX_ORACLE_PACKETS_PER_FLOW, packets))


def oracle_expected_retransmissions(pools: Sequence[PatternSet], scheme: Scheme, ch: ChannelModel,
                                    topology: Optional[Topology]=None, strict_groups: bool=False,
                                    cap: int=DEFAULT_STATE_CAP) -> float:
    """Exact expected retransmissions to empty the given pools."""
    pools = list(pools)
    if not pools:
        return 0.0
    n = pools[0].n
    ch.check_receivers(n)
    for s in pools:
        if s.is_alias():
            raise ValueError("pass the coded set itself, not a redistribution alias: %s" % s)
    _check_small(n, sum(len(s) for s in pools))
    if topology is None:
        topology = _infer_topology(n, [s.flow_tag for s in pools])
    chain = _PatternChain(topology, ch, scheme, strict_groups)
    start = chain.canonical((s.pattern.mask, s.intended_mask) for s in pools for _ in s.packets)
    values = solve_absorbing([start], chain.step, lambda s: 1.0, lambda s: not s, cap)
    return values[start]


def oracle_from_original(topo: Topology, k: int, scheme: Scheme, ch: ChannelModel,
                         strict_groups: bool=False, cap: int=DEFAULT_STATE_CAP) -> float:
    """Expected retransmissions averaged over the exact distribution of original-phase outcomes."""
    ch.check_receivers(topo.n)
    if not 1 <= k <= MAX_ORACLE_PACKETS_PER_FLOW:
        raise ValueError("the oracle handles 1..%d packets per flow, got %d" % (MAX_ORACLE_PACKETS_PER_FLOW, k))
    _check_small(topo.n, 0)
    planner = Simulator(topo, ch, k, scheme, strict_groups)
    chain = _PatternChain(topo, ch, scheme, strict_groups)

    dist = {(): 1.0}
    for c, targets in planner.original_plan():
        intended = sum(1 << (r - 1) for r in targets)
        held_before = 0
        if c.is_native():
            (flow,) = targets
            for r in range(1, topo.n + 1):
                if flow in topo.overhear[r]:
                    held_before |= 1 << (r - 1)
        outcomes = []
        for received, prob in chain.outcomes:
            if received & intended == intended:
                outcomes.append((None, prob))
                continue
            if c.is_native() or scheme.stores_coded:
                mask = received | held_before
            else:
                mask = received & intended
            outcomes.append(((mask, intended), prob))
        new = {}
        for state, p in dist.items():
            for item, q in outcomes:
                s = state if item is None else chain.canonical(state + (item,))
                new[s] = new.get(s, 0.0) + p * q
        dist = new

    values = solve_absorbing(list(dist), chain.step, lambda s: 1.0, lambda s: not s, cap)
    return sum(p * values[s] for s, p in dist.items())
