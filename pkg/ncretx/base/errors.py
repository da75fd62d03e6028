# -*- coding: utf-8 -*-


class ConfigurationError(ValueError):
    """Invalid experiment configuration."""


class TransferError(ValueError):
    """A pattern transfer was requested between patterns that do not allow it."""


class SimulationDivergedError(RuntimeError):

    def __init__(self, rounds: int, pool_sizes):
        self.rounds = rounds
        self.pool_sizes = list(pool_sizes)
        super().__init__("rescue phase still has %d lost packets after %d rounds (pool sizes: %s); "
                         "a loss rate close to 1 or a scheduling bug"
                         % (sum(self.pool_sizes), rounds, self.pool_sizes))


class StateSpaceOverflowError(RuntimeError):

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__("reachable state space exceeds %d states" % cap)
