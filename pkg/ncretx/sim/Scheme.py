# -*- coding: utf-8 -*-
from enum import Enum


class Scheme(Enum):
    """Retransmission strategy of the coding node and the matching receiver storage policy."""
    ARQ = "arq"
    NC_ARQ = "nc_arq"
    PROPOSED = "proposed"

    @staticmethod
    def fromString(s: str):
        key = s.strip().lower().replace("-", "_")
        try:
            return Scheme(key)
        except ValueError:
            raise ValueError("unknown scheme %r, expected one of %s" % (s, ", ".join(x.value for x in Scheme)))

    @property
    def codes(self) -> bool:
        return self is not Scheme.ARQ

    @property
    def stores_coded(self) -> bool:
        """Receivers keep and report every coded packet they overhear."""
        return self is Scheme.PROPOSED

    def __str__(self):
        return self.value
