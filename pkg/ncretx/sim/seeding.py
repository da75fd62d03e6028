# -*- coding: utf-8 -*-
from typing import Tuple

import numpy as np


def replica_rng(master_seed: int, *key: int) -> Tuple[np.random.Generator, int]:
    """Independent stream for one replica, keyed by (master seed, key...).

    Returns the generator and a derived integer seed that names the stream in reports."""
    if master_seed < 0:
        raise ValueError("seed must be non-negative, got %r" % master_seed)
    seq = np.random.SeedSequence(master_seed, spawn_key=tuple(int(k) for k in key))
    derived = int(seq.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
    return np.random.default_rng(seq), derived
