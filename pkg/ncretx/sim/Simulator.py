# -*- coding: utf-8 -*-
"""Round-based Monte Carlo simulation of the coding node and its receivers."""
import logging
from collections import OrderedDict, deque
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ncretx.base.errors import SimulationDivergedError
from ncretx.base.utils import iter_bits
from ncretx.coding.Coding import find_code_groups, redistribute, sort_by_dominance
from ncretx.coding.Combination import Combination
from ncretx.coding.KnowledgeStore import KnowledgeStore
from ncretx.coding.PatternSet import PatternSet
from ncretx.patterns.ChannelModel import ChannelModel
from ncretx.patterns.LossPattern import LossPattern
from ncretx.sim.Scheme import Scheme
from ncretx.sim.SimReport import SimReport
from ncretx.sim.Topology import Topology

logger = logging.getLogger(__name__)

MAX_ROUNDS = 10 ** 7
ORIGINAL_CHUNK = 1 << 16


class LostPacket(object):
    """A transmitted combination that some intended receiver cannot decode yet.

    targets maps each intended receiver to the native it wants out of the combination.
    mask has bit (i - 1) set iff receiver i can compute the combination."""

    def __init__(self, combination: Combination, targets: Dict[int, int], mask: int=0):
        self.combination = combination
        self.targets = OrderedDict(sorted(targets.items()))
        self.mask = mask
        self.intended_mask = sum(1 << (r - 1) for r in self.targets)

    @property
    def flow_tag(self) -> Tuple[int, ...]:
        return tuple(self.targets)

    @property
    def needing_mask(self) -> int:
        return self.intended_mask & ~self.mask

    def degrade(self, receiver: int):
        """Retransmit only the native this receiver still wants."""
        target = self.targets[receiver]
        self.combination = Combination.native(target)
        self.targets = OrderedDict([(receiver, target)])
        self.intended_mask = 1 << (receiver - 1)

    def __repr__(self):
        return "LostPacket(%s, mask=%s)" % (self.combination, bin(self.mask))


class RescueState(object):
    """Receivers' knowledge and the coding node's lost packets after the original phase."""

    def __init__(self, topology: Topology, k: int, stores: Sequence[KnowledgeStore],
                 packets: Sequence[LostPacket], original_transmissions: int):
        if len(stores) != topology.n:
            raise ValueError("%d knowledge stores for %d receivers" % (len(stores), topology.n))
        self.topology = topology
        self.k = k
        self.stores = list(stores)
        self.packets = list(packets)
        self.original_transmissions = original_transmissions

    def mask_of(self, c: Combination) -> int:
        mask = 0
        for j, ks in enumerate(self.stores):
            if ks.contains(c):
                mask |= 1 << j
        return mask

    def pools(self) -> Tuple[List[PatternSet], Dict[Combination, LostPacket]]:
        """Live packets grouped by (intended receivers, pattern), in first-seen order."""
        by_key = OrderedDict()
        by_combination = {}
        for lp in self.packets:
            if not lp.needing_mask:
                continue
            by_key.setdefault((lp.flow_tag, lp.mask), []).append(lp.combination)
            by_combination[lp.combination] = lp
        pools = [PatternSet(LossPattern(self.topology.n, mask), combinations, tag)
                 for (tag, mask), combinations in by_key.items()]
        return pools, by_combination


class Simulator(object):
    """One scheme on one topology and channel, k packets per flow."""

    def __init__(self, topology: Topology, ch: ChannelModel, k: int, scheme: Scheme,
                 strict_groups: bool=False, max_rounds: int=MAX_ROUNDS):
        ch.check_receivers(topology.n)
        if k < 1:
            raise ValueError("packets per flow must be at least 1, got %r" % k)
        self.topology = topology
        self.ch = ch
        self.k = k
        self.scheme = scheme
        self.strict_groups = strict_groups
        self.max_rounds = max_rounds
        self._omegas = np.array(ch.omegas, dtype=float)

    def packet_id(self, flow: int, seq: int) -> int:
        return (flow - 1) * self.k + seq + 1

    def _block(self) -> List[Tuple[int, ...]]:
        """Flows served by each transmission of one sequence number, in sending order."""
        relevant = self.topology.relevant if self.scheme.codes else None
        block = [tuple(relevant)] if relevant is not None else []
        block += [(flow,) for flow in range(1, self.topology.n + 1) if relevant is None or flow not in relevant]
        return block

    def _entry(self, flows: Tuple[int, ...], seq: int) -> Tuple[Combination, Dict[int, int]]:
        targets = OrderedDict((flow, self.packet_id(flow, seq)) for flow in flows)
        return Combination(targets.values()), dict(targets)

    def original_plan(self) -> List[Tuple[Combination, Dict[int, int]]]:
        """The original phase as (combination, intended receiver -> native) pairs, in sending order."""
        block = self._block()
        return [self._entry(flows, seq) for seq in range(self.k) for flows in block]

    def initial_stores(self) -> List[KnowledgeStore]:
        stores = []
        for r in range(1, self.topology.n + 1):
            ks = KnowledgeStore()
            for flow in sorted(self.topology.overhear[r]):
                for seq in range(self.k):
                    ks.add(Combination.native(self.packet_id(flow, seq)))
            stores.append(ks)
        return stores

    def _store(self, ks: KnowledgeStore, c: Combination, wanted: Sequence[int]):
        if c.is_native() or self.scheme.stores_coded:
            ks.add(c)
            return
        for target in wanted:
            if ks.would_decode(c, target):
                ks.add(c)
                return

    def run_original_phase(self, rng: np.random.Generator) -> RescueState:
        """Send the original plan in chunks and keep only what the rescue phase can use.

        Every native appears in exactly one transmission, so knowledge about packets
        that nobody lost never combines with a retransmission and is not stored."""
        block = self._block()
        n = self.topology.n
        intended = np.zeros((len(block), n), dtype=bool)
        for b, flows in enumerate(block):
            intended[b, [flow - 1 for flow in flows]] = True
        lost = []
        per_chunk = max(1, ORIGINAL_CHUNK // len(block))
        for start in range(0, self.k, per_chunk):
            seqs = min(per_chunk, self.k - start)
            received = rng.random((seqs, len(block), n)) >= self._omegas
            missed = (intended & ~received).any(axis=2)
            for s, b in zip(*np.nonzero(missed)):
                c, targets = self._entry(block[b], start + int(s))
                lost.append((c, targets, np.flatnonzero(received[s, b])))

        stores = [KnowledgeStore() for _ in range(n)]
        for r in range(1, n + 1):
            for _, targets, _ in lost:
                for flow, pid in targets.items():
                    if flow in self.topology.overhear[r]:
                        stores[r - 1].add(Combination.native(pid))
        packets = []
        for c, targets, received in lost:
            for j in received:
                receiver = int(j) + 1
                self._store(stores[j], c, [targets[receiver]] if receiver in targets else [])
            packets.append(LostPacket(c, targets))
        state = RescueState(self.topology, self.k, stores, packets, self.k * len(block))
        for lp in packets:
            lp.mask = state.mask_of(lp.combination)
        logger.debug("[Original] %d transmissions, %d lost packets" % (state.original_transmissions, len(packets)))
        return state

    def schedule(self, pools: List[PatternSet]) -> List[List[PatternSet]]:
        """Transmission entries for one round; each entry is a code group or a lone set."""
        if not self.scheme.codes:
            groups, lone = [], list(pools)
        else:
            groups = find_code_groups(pools, self.ch, self.strict_groups)
            grouped = {id(m) for g in groups for m in g}
            lone = [s for s in pools if id(s) not in grouped]
            if self.scheme is Scheme.PROPOSED and self.topology.relevant is not None:
                groups, lone = self._regroup_split(groups, lone)

        entries = []
        for g in groups:
            d = g.dominant
            entries.append(((d.pattern.weight(), min(d.needing())) + d.key(), sort_by_dominance(g, self.ch)))
        for s in lone:
            entries.append(((s.pattern.weight(), min(s.needing())) + s.key(), [s]))
        entries.sort(key=lambda e: e[0])
        logger.debug("[Schedule] %d groups, %d lone sets" % (len(groups), len(lone)))
        return [members for _, members in entries]

    def _regroup_split(self, groups, lone):
        r1, r2 = self.topology.relevant
        split = redistribute(lone, r1, r2)
        aliases = [s for s in split if s.is_alias()]
        if not aliases:
            return groups, lone
        extra = find_code_groups(split, self.ch, self.strict_groups)
        grouped = {id(m) for g in extra for m in g}
        kept = {id(s) for s in split}
        still_lone = [s for s in split if id(s) not in grouped and not s.is_alias()]
        for original in lone:
            if id(original) in kept:
                continue
            left = [a for a in aliases if a.packets is original.packets and id(a) not in grouped]
            still_lone.extend([original] if len(left) == 2 else left)
        logger.debug("[Redistribution] %d aliases, %d new groups" % (len(aliases), len(extra)))
        return groups + extra, still_lone

    @staticmethod
    def _refresh(lp: LostPacket, wanted_mask: int, stores: List[KnowledgeStore]):
        for r in iter_bits(wanted_mask & ~lp.mask):
            if stores[r - 1].contains(lp.combination):
                lp.mask |= 1 << (r - 1)

    def _transmit(self, members: List[PatternSet], by_combination: Dict[Combination, LostPacket],
                  stores: List[KnowledgeStore], rng: np.random.Generator) -> int:
        """Send one entry until its members run out of packets.

        Each slot XORs the head packet of every member. A packet some needing
        receiver missed goes back to the end of its member's queue, so the entry
        keeps coding until its last member is empty. With strict groups a packet
        is sent at most once per round."""
        queues = [deque(by_combination[c] for c in m.packets) for m in members]
        requeue = not self.strict_groups
        sent = 0
        while True:
            chosen = []
            for m, queue in zip(members, queues):
                while queue:
                    lp = queue.popleft()
                    self._refresh(lp, m.intended_mask, stores)
                    if m.intended_mask & ~lp.mask:
                        chosen.append((m, queue, lp))
                        break
            if not chosen:
                return sent
            payload = set()
            for _, _, lp in chosen:
                payload ^= lp.combination.support
            if not payload:
                continue
            payload = Combination(payload)
            sent += 1
            received = np.flatnonzero(rng.random(self.topology.n) >= self._omegas)
            for j in received:
                receiver = int(j) + 1
                wanted = [lp.targets[receiver] for _, _, lp in chosen
                          if receiver in lp.targets and not lp.mask >> j & 1]
                self._store(stores[j], payload, wanted)
            for m, queue, lp in chosen:
                for j in received:
                    if not lp.mask >> j & 1 and stores[j].contains(lp.combination):
                        lp.mask |= 1 << int(j)
                if requeue and m.intended_mask & ~lp.mask:
                    queue.append(lp)

    def run_rescue_phase(self, state: RescueState, rng: np.random.Generator, seed: Optional[int]=None) -> SimReport:
        packets = state.packets
        retransmissions = 0
        pool_sizes = []
        rounds = 0
        while True:
            for lp in packets:
                lp.mask = state.mask_of(lp.combination)
                if self.scheme is Scheme.NC_ARQ and len(lp.targets) > 1:
                    needing = [r for r in lp.targets if lp.needing_mask >> (r - 1) & 1]
                    if len(needing) == 1:
                        lp.degrade(needing[0])
                        lp.mask = state.mask_of(lp.combination)
            packets = [lp for lp in packets if lp.needing_mask]
            state.packets = packets
            if not packets:
                break
            if rounds >= self.max_rounds:
                pools, _ = state.pools()
                raise SimulationDivergedError(rounds, [len(s) for s in pools])
            rounds += 1
            pools, by_combination = state.pools()
            pool_sizes.append(len(packets))
            logger.debug("[Rescue] round %d: %d packets in %d pools" % (rounds, len(packets), len(pools)))
            for members in self.schedule(pools):
                retransmissions += self._transmit(members, by_combination, state.stores, rng)

        report = SimReport(self.scheme, self.topology.n, self.k, state.original_transmissions, retransmissions,
                           pool_sizes, seed=seed)
        logger.debug("[Rescue] %s" % report)
        return report

    def simulate(self, rng: np.random.Generator, seed: Optional[int]=None) -> SimReport:
        return self.run_rescue_phase(self.run_original_phase(rng), rng, seed)


def run_original_phase(topo: Topology, ch: ChannelModel, k: int, scheme: Scheme,
                       rng: np.random.Generator) -> RescueState:
    return Simulator(topo, ch, k, scheme).run_original_phase(rng)


def run_rescue_phase(scheme: Scheme, state: RescueState, ch: ChannelModel, rng: np.random.Generator,
                     strict_groups: bool=False, seed: Optional[int]=None) -> SimReport:
    return Simulator(state.topology, ch, state.k, scheme, strict_groups).run_rescue_phase(state, rng, seed)


def simulate(topo: Topology, ch: ChannelModel, k: int, scheme: Scheme, rng: np.random.Generator,
             seed: Optional[int]=None, strict_groups: bool=False) -> SimReport:
    return Simulator(topo, ch, k, scheme, strict_groups).simulate(rng, seed)


def drain_code_group(sizes: Sequence[int], ch: ChannelModel, rng: np.random.Generator) -> Tuple[List[int], int]:
    """Rescue one code group slot by slot, every member needing a single receiver.

    Member i needs receiver i. Returns the slot at which each member ran out and
    the dominant member's packets left when the sub-dominant member ran out."""
    ch.check_receivers(len(sizes))
    if len(sizes) < 2:
        raise ValueError("a code group has at least 2 members, got %d" % len(sizes))
    remaining = [int(s) for s in sizes]
    emptied = [0] * len(sizes)
    order = sorted(range(len(sizes)), key=lambda i: (sizes[i], ch.omegas[i], -i))
    dom, sub = order[-1], order[-2]
    residue = remaining[dom] if remaining[sub] == 0 else None
    omegas = np.array(ch.omegas, dtype=float)
    slot = 0
    while any(remaining):
        slot += 1
        ok = rng.random(len(sizes)) >= omegas
        for i in range(len(sizes)):
            if remaining[i] and ok[i]:
                remaining[i] -= 1
                if not remaining[i]:
                    emptied[i] = slot
        if residue is None and remaining[sub] == 0:
            residue = remaining[dom]
    return emptied, residue


def rescue_pool(or_size: int, p: LossPattern, ch: ChannelModel,
                rng: np.random.Generator) -> Tuple[int, Dict[int, int]]:
    """Broadcast every packet of a pool in state p until some receiver lacking it gets it.

    Returns the slots spent and, per landing pattern mask, how many packets left p for it."""
    ch.check_receivers(p.n)
    if p.is_full():
        raise ValueError("pattern %s has no receiver left to rescue" % p)
    zeros = sorted(p.zeros())
    omegas = np.array([ch.omega(r) for r in zeros], dtype=float)
    bits = np.array([1 << (r - 1) for r in zeros], dtype=np.int64)
    slots = 0
    landed = {}
    remaining = int(or_size)
    while remaining:
        slots += remaining
        received = rng.random((remaining, len(zeros))) >= omegas
        masks = received.astype(np.int64) @ bits
        left = masks[masks != 0]
        for mask, count in zip(*np.unique(left, return_counts=True)):
            key = p.mask | int(mask)
            landed[key] = landed.get(key, 0) + int(count)
        remaining -= len(left)
    return slots, landed
