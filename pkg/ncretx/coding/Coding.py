# -*- coding: utf-8 -*-
"""Decodability, code-group search, dominance and redistribution of pattern sets."""
from collections import OrderedDict
from typing import Dict, List, Optional, Sequence

from ncretx.base.utils import popcount
from ncretx.coding.CodeGroup import CodeGroup
from ncretx.coding.Combination import Combination
from ncretx.coding.KnowledgeStore import KnowledgeStore
from ncretx.coding.PatternSet import PatternSet
from ncretx.patterns.ChannelModel import ChannelModel


def insert_knowledge(ks: KnowledgeStore, c: Combination) -> KnowledgeStore:
    res = ks.copy()
    res.add(c)
    return res


def decodable(ks: KnowledgeStore, target: int) -> bool:
    return ks.decodable(target)


def compatible(a: PatternSet, b: PatternSet) -> bool:
    """Disjoint needing receivers, each of which holds the other set's packets."""
    return a.needing_mask & b.needing_mask == 0 \
        and a.needing_mask & ~b.pattern.mask == 0 \
        and b.needing_mask & ~a.pattern.mask == 0


def _outside_columns_zero(sets: Sequence[PatternSet]) -> bool:
    n = sets[0].n
    intended = 0
    for s in sets:
        intended |= s.intended_mask
    outside = ((1 << n) - 1) & ~intended
    return all(s.pattern.mask & outside == 0 for s in sets)


def can_code_together(sets: Sequence[PatternSet], strict: bool=False) -> bool:
    """Whether one packet of every set can be XORed into a slot that every needing receiver decodes.

    The default is the pairwise if-and-only-if test. With strict, the receivers
    that are not intended by any member must also hold none of the packets."""
    sets = list(sets)
    if len(sets) < 2:
        raise ValueError("at least 2 pattern sets are needed, got %d" % len(sets))
    n = sets[0].n
    for s in sets:
        if s.n != n:
            raise ValueError("pattern sets of different receiver counts: %d vs %d" % (n, s.n))
        if len(s) == 0:
            raise ValueError("empty pattern set %s" % s)
    if len(sets) > n:
        return False
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not compatible(sets[i], sets[j]):
                return False
    return not strict or _outside_columns_zero(sets)


def brute_force_decodes(sets: Sequence[PatternSet]) -> bool:
    """Deliver the XOR of one packet per set and check that every needing receiver decodes its own.

    Receiver j holds member i's packet iff the pattern says so; the intended
    receivers of a coded member also know its other natives."""
    sets = list(sets)
    n = sets[0].n
    stride = n + 1

    def pid(i, r):
        return i * stride + r

    combinations = []
    for i, s in enumerate(sets):
        combinations.append(Combination(pid(i, r) for r in (s.alias_of or s.flow_tag)))

    payload = set()
    for c in combinations:
        payload ^= c.support
    if not payload:
        return False
    delivered = Combination(payload)

    for j in range(1, n + 1):
        ks = KnowledgeStore()
        for i, s in enumerate(sets):
            tag = s.alias_of or s.flow_tag
            if s.pattern.holds(j):
                ks.add(combinations[i])
            if j in tag:
                for r in tag:
                    if r != j:
                        ks.add(Combination.native(pid(i, r)))
        ks.add(delivered)
        for i, s in enumerate(sets):
            if j in s.needing() and not ks.decodable(pid(i, j)):
                return False
    return True


def _dominance_key(s: PatternSet, ch: Optional[ChannelModel]):
    needing = s.needing()
    w = max(ch.omega(r) for r in needing) if ch is not None else 0.0
    return (len(s), w, -min(needing))


def _dominant_member(members: Sequence[PatternSet], ch: Optional[ChannelModel]) -> PatternSet:
    return max(members, key=lambda s: _dominance_key(s, ch))


def dominant(group: CodeGroup, ch: Optional[ChannelModel]=None) -> PatternSet:
    """The member emptied last: most packets, then the highest loss rate, then the lowest receiver id."""
    return _dominant_member(group.members, ch)


def sort_by_dominance(group: CodeGroup, ch: Optional[ChannelModel]=None) -> List[PatternSet]:
    """Members in the order they run out of packets, dominant last."""
    return sorted(group.members, key=lambda s: _dominance_key(s, ch))


def _search_order(s: PatternSet):
    return (-len(s), -s.pattern.weight(), s.flow_tag, s.pattern.mask, s.alias_of or ())


def _grow(seed: PatternSet, buckets: Dict[int, List[PatternSet]], assigned: set) -> List[PatternSet]:
    members = [seed]
    held = seed.pattern.mask
    needed = seed.needing_mask
    for mask, bucket in buckets.items():
        if mask & ~held or mask & needed:
            continue
        for cand in bucket:
            if id(cand) in assigned or needed & ~cand.pattern.mask:
                continue
            members.append(cand)
            held &= cand.pattern.mask
            needed |= cand.needing_mask
            break
    return members


def _prune_outside(members: List[PatternSet]) -> List[PatternSet]:
    members = list(members)
    while len(members) >= 2 and not _outside_columns_zero(members):
        intended = 0
        for s in members:
            intended |= s.intended_mask
        outside = ((1 << members[0].n) - 1) & ~intended
        violators = [i for i, s in enumerate(members) if s.pattern.mask & outside]
        if violators[-1] == 0:
            return members[:1]
        del members[violators[-1]]
    return members


def find_code_groups(pools: Sequence[PatternSet], ch: Optional[ChannelModel]=None,
                     strict: bool=True) -> List[CodeGroup]:
    """Greedy partition of the live pattern sets into code groups.

    Seeds are taken largest first; each seed takes at most one compatible set per
    needing-receiver signature. Sets that end up in no group are left out and
    go out alone."""
    live = sorted((s for s in pools if len(s) > 0), key=_search_order)
    buckets = OrderedDict()     # type: Dict[int, List[PatternSet]]
    for s in sorted(live, key=lambda s: (popcount(s.needing_mask), s.needing_mask)):
        buckets.setdefault(s.needing_mask, [])
    for s in live:
        buckets[s.needing_mask].append(s)

    assigned = set()
    groups = []
    for seed in live:
        if id(seed) in assigned:
            continue
        assigned.add(id(seed))
        members = _grow(seed, buckets, assigned)
        if strict:
            members = _prune_outside(members)
        if len(members) < 2:
            assigned.discard(id(seed))
            continue
        for m in members:
            assigned.add(id(m))
        groups.append(CodeGroup(members, _dominant_member(members, ch)))
    return groups


def redistribute(pools: Sequence[PatternSet], r1: int, r2: int) -> List[PatternSet]:
    """Split every coded set that both relevant receivers lack, and that someone else holds,
    into two aliases sharing its packets, one per relevant receiver."""
    if r1 == r2:
        raise ValueError("relevant receivers must differ, got %d twice" % r1)
    tag = tuple(sorted((r1, r2)))
    kept = []
    aliases = []
    for s in pools:
        if s.flow_tag == tag and not s.is_alias() and not s.pattern.holds(r1) and not s.pattern.holds(r2) \
                and s.pattern.weight() != 0:
            aliases.append(PatternSet(s.pattern, s.packets, (r1,), alias_of=tag))
            aliases.append(PatternSet(s.pattern, s.packets, (r2,), alias_of=tag))
        else:
            kept.append(s)
    return kept + aliases
