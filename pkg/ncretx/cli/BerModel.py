# -*- coding: utf-8 -*-
import math
from typing import Optional

from scipy.stats import binom

# 1532-byte packets, RS(32, 28) over 8-bit symbols
PACKET_BYTES = 1532
RS_N = 32
RS_K = 28
SYMBOL_BITS = 8


class BerModel(object):
    """Maps a bit error rate to a packet loss probability.

    A packet is split into RS blocks of rs_k payload symbols; a block fails when
    more than t = (rs_n - rs_k) // 2 of its rs_n symbols are wrong, and the packet
    is lost when any block fails. Error detection is taken to be perfect."""

    def __init__(self, packet_bytes: int=PACKET_BYTES, rs_n: int=RS_N, rs_k: int=RS_K,
                 symbol_bits: int=SYMBOL_BITS):
        if not 0 < rs_k < rs_n:
            raise ValueError("need 0 < rs_k < rs_n, got rs_n=%d rs_k=%d" % (rs_n, rs_k))
        if packet_bytes < 1 or symbol_bits < 1:
            raise ValueError("packet size and symbol size must be positive")
        self.packet_bytes = packet_bytes
        self.rs_n = rs_n
        self.rs_k = rs_k
        self.symbol_bits = symbol_bits

    @property
    def correctable(self) -> int:
        return (self.rs_n - self.rs_k) // 2

    @property
    def blocks(self) -> int:
        return int(math.ceil(self.packet_bytes / float(self.rs_k)))

    def symbol_error(self, ber: float) -> float:
        return -math.expm1(self.symbol_bits * math.log1p(-ber))

    def block_failure(self, ber: float) -> float:
        return float(binom.sf(self.correctable, self.rs_n, self.symbol_error(ber)))

    def loss(self, ber: float) -> float:
        if not 0.0 <= ber < 1.0:
            raise ValueError("bit error rate must be in [0, 1), got %r" % ber)
        if ber == 0.0:
            return 0.0
        q = self.block_failure(ber)
        if q >= 1.0:
            raise ValueError("bit error rate %r loses every packet" % ber)
        return -math.expm1(self.blocks * math.log1p(-q))

    def __repr__(self):
        return "BerModel(packet_bytes=%d, rs=(%d, %d), symbol_bits=%d)" \
               % (self.packet_bytes, self.rs_n, self.rs_k, self.symbol_bits)


def ber_to_loss(ber: float, model: Optional[BerModel]=None) -> float:
    return (model or BerModel()).loss(ber)
