# -*- coding: utf-8 -*-
from typing import Sequence

from ncretx.coding.PatternSet import PatternSet


class CodeGroup(object):
    """Pattern sets whose packets go out XORed together, one packet per member per slot."""

    def __init__(self, members: Sequence[PatternSet], dominant: PatternSet):
        members = list(members)
        if len(members) < 2:
            raise ValueError("a code group needs at least 2 members, got %d" % len(members))
        n = members[0].n
        if len(members) > n:
            raise ValueError("a code group has at most %d members, got %d" % (n, len(members)))
        assert any(m is dominant for m in members)
        self.members = members
        self.dominant = dominant

    def transmissions(self) -> int:
        return max(len(m) for m in self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item):
        return any(m is item for m in self.members)

    def __str__(self):
        return "{" + ", ".join(str(m.pattern) + ("*" if m is self.dominant else "") for m in self.members) + "}"

    def __repr__(self):
        return "CodeGroup%s" % str(self)
