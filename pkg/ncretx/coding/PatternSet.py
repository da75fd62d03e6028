# -*- coding: utf-8 -*-
from typing import Iterable, Optional, Set, Tuple

from ncretx.base.utils import iter_bits, receivers_to_mask
from ncretx.coding.Combination import Combination
from ncretx.patterns.LossPattern import LossPattern


class PatternSet(object):
    """The lost packets of one request set that currently share one loss pattern.

    flow_tag lists the intended receivers: (j,) for the natives of flow j,
    (r1, r2) for the coded packets of the relevant pair. An alias made by
    redistribution keeps a one-receiver tag and remembers the tag it came from.
    Packets are kept in a list to give retransmissions a stable order."""

    def __init__(self, pattern: LossPattern, packets: Iterable[Combination], flow_tag: Iterable[int],
                 alias_of: Optional[Tuple[int, ...]]=None):
        self.pattern = pattern
        self.packets = packets if isinstance(packets, list) else list(packets)
        self.flow_tag = tuple(sorted(set(flow_tag)))
        self.alias_of = alias_of
        self.intended_mask = receivers_to_mask(self.flow_tag, pattern.n)
        if self.needing_mask == 0:
            raise ValueError("pattern %s already satisfies flow %s" % (pattern, self.flow_tag))

    @property
    def n(self) -> int:
        return self.pattern.n

    @property
    def needing_mask(self) -> int:
        return self.intended_mask & ~self.pattern.mask

    def needing(self) -> Set[int]:
        """Intended receivers that still lack the packets."""
        return set(iter_bits(self.needing_mask))

    def is_alias(self) -> bool:
        return self.alias_of is not None

    def is_coded(self) -> bool:
        return len(self.flow_tag) > 1

    def __len__(self):
        return len(self.packets)

    def key(self):
        return (self.flow_tag, self.pattern.mask, self.alias_of or ())

    def __str__(self):
        tag = ",".join(map(str, self.flow_tag))
        alias = "~" if self.is_alias() else ""
        return "%s^{%s}%s x%d" % (self.pattern, tag, alias, len(self.packets))

    def __repr__(self):
        return "PatternSet(%s)" % str(self)
