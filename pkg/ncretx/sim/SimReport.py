# -*- coding: utf-8 -*-
import logging
import math
from typing import Dict, List, Optional

from ncretx.sim.Scheme import Scheme

logger = logging.getLogger(__name__)


def retransmission_gain(baseline: float, proposed: float) -> float:
    """baseline / proposed; 1 when both are zero, infinite when only proposed is."""
    if proposed == 0:
        if baseline == 0:
            return 1.0
        logger.warning("[Gain] no retransmissions against a baseline of %s, gain is infinite" % baseline)
        return math.inf
    return baseline / proposed


class SimReport(object):
    """Counts of one simulated run of one scheme."""

    def __init__(self, scheme: Scheme, n: int, k: int, original_transmissions: int, retransmissions: int,
                 per_round_pool_sizes: List[int], seed: Optional[int]=None, trials: int=1):
        if original_transmissions < 0 or retransmissions < 0:
            raise ValueError("transmission counts must be non-negative")
        self.scheme = scheme
        self.n = n
        self.k = k
        self.original_transmissions = original_transmissions
        self.retransmissions = retransmissions
        self.per_round_pool_sizes = list(per_round_pool_sizes)
        self.seed = seed
        self.trials = trials
        self.gain_vs = {}   # type: Dict[Scheme, float]

    @property
    def total_transmissions(self) -> int:
        return self.original_transmissions + self.retransmissions

    @property
    def rounds(self) -> int:
        return len(self.per_round_pool_sizes)

    @property
    def lambda_hat(self) -> float:
        """Retransmissions per original packet."""
        return self.retransmissions / float(self.k * self.n)

    def compare(self, baseline) -> float:
        """Record and return the gain of this run over a baseline run."""
        gain = retransmission_gain(baseline.retransmissions, self.retransmissions)
        self.gain_vs[baseline.scheme] = gain
        return gain

    def _members(self):
        return (self.scheme, self.n, self.k, self.original_transmissions, self.retransmissions,
                tuple(self.per_round_pool_sizes), self.seed, self.trials)

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())

    def __str__(self):
        return "%s: %d original + %d retransmissions in %d rounds (lambda=%.6f)" \
               % (self.scheme, self.original_transmissions, self.retransmissions, self.rounds, self.lambda_hat)
