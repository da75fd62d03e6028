# -*- coding: utf-8 -*-
import math
import os
from collections import OrderedDict
from typing import List, Optional, Sequence, Tuple

from ncretx.base.errors import ConfigurationError
from ncretx.base.utils import MAX_RECEIVERS, parse_csv_floats, parse_csv_ints
from ncretx.cli.BerModel import BerModel
from ncretx.sim.Scheme import Scheme
from ncretx.sim.Topology import Topology, TopologyKind

# Defaults
DEFAULT_TOPOLOGY = "wheel"
DEFAULT_N = 3
DEFAULT_R1 = 1
DEFAULT_R2 = 2
DEFAULT_K = 1000
DEFAULT_MIN_LOSSES = 200
MAX_K = 10 ** 7
DEFAULT_TRIALS = 5
DEFAULT_SEED = 42
DEFAULT_WORKERS = 1
DEFAULT_SCHEMES = "arq,nc_arq,proposed"
DEFAULT_BER_GRID = "1e-4,5e-4,1e-3,1.5e-3,2e-3,2.5e-3,3e-3,3.5e-3"
DEFAULT_N_RANGE = "3:25"

SEED_ENV = "NCRETX_SEED"

# keys in file order
KEYS = ("topology", "n", "n_range", "r1", "r2", "omegas", "ber_grid", "k", "min_losses", "schemes", "trials", "seed",
        "workers", "strict_groups", "out")


def parse_grid(s: str) -> Tuple[float, ...]:
    """'start:stop:step' (stop included) or a comma-separated list."""
    if ":" not in s:
        values = parse_csv_floats(s)
    else:
        parts = s.split(":")
        if len(parts) != 3:
            raise ConfigurationError("grid must be start:stop:step, got %r" % s)
        try:
            start, stop, step = (float(x) for x in parts)
        except ValueError:
            raise ConfigurationError("grid must be start:stop:step, got %r" % s)
        if step <= 0 or stop < start:
            raise ConfigurationError("grid needs step > 0 and stop >= start, got %r" % s)
        count = int(round((stop - start) / step))
        if start + count * step > stop + 1e-9 * max(1.0, abs(stop)):
            count -= 1
        values = tuple(float("%.12g" % (start + i * step)) for i in range(count + 1))
    if not values:
        raise ConfigurationError("empty grid %r" % s)
    return values


def parse_range(s: str) -> Tuple[int, ...]:
    """'3:25' (inclusive) or '3,5,9'."""
    if ":" in s:
        try:
            lo, hi = (int(x) for x in s.split(":"))
        except ValueError:
            raise ConfigurationError("range must be lo:hi, got %r" % s)
        values = tuple(range(lo, hi + 1))
    else:
        values = parse_csv_ints(s)
    if not values:
        raise ConfigurationError("empty range %r" % s)
    return values


def _parse_bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError("not a boolean: %r" % s)


class GridPoint(object):
    """One channel setting of an experiment."""

    def __init__(self, n: int, omegas: Sequence[float], ber: Optional[float]=None):
        self.n = n
        self.omegas = tuple(omegas)
        self.ber = ber

    def _members(self):
        return (self.n, self.omegas, self.ber)

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())

    def __repr__(self):
        return "GridPoint(n=%d, omegas=%r, ber=%r)" % self._members()


class ExperimentConfig(object):
    """Flat experiment settings, loaded from 'key = value' text and overridden by flags."""

    def __init__(self, topology: str=DEFAULT_TOPOLOGY, n: int=DEFAULT_N, n_range: Optional[Sequence[int]]=None,
                 r1: int=DEFAULT_R1, r2: int=DEFAULT_R2, omegas: Optional[Sequence[float]]=None,
                 ber_grid: Optional[Sequence[float]]=None, k: int=DEFAULT_K, min_losses: int=DEFAULT_MIN_LOSSES,
                 schemes: Sequence[Scheme]=None, trials: int=DEFAULT_TRIALS, seed: Optional[int]=None,
                 workers: int=DEFAULT_WORKERS, strict_groups: bool=False, out: Optional[str]=None):
        try:
            self.topology = TopologyKind.fromString(topology) if isinstance(topology, str) else topology
            self.schemes = tuple(schemes) if schemes is not None \
                else tuple(Scheme.fromString(s) for s in DEFAULT_SCHEMES.split(","))
        except ValueError as e:
            raise ConfigurationError(str(e))
        self.n = int(n)
        self.n_range = tuple(n_range) if n_range is not None else None
        self.r1 = int(r1)
        self.r2 = int(r2)
        self.omegas = tuple(float(w) for w in omegas) if omegas is not None else None
        self.ber_grid = tuple(float(b) for b in ber_grid) if ber_grid is not None else None
        self.k = int(k)
        self.min_losses = int(min_losses)
        self.trials = int(trials)
        self.seed = int(seed) if seed is not None else None
        self.workers = int(workers)
        self.strict_groups = bool(strict_groups)
        self.out = out
        self.validate()

    def validate(self):
        if self.k < 1:
            raise ConfigurationError("k must be at least 1, got %d" % self.k)
        if self.min_losses < 0:
            raise ConfigurationError("min_losses must be non-negative, got %d" % self.min_losses)
        if self.trials < 1:
            raise ConfigurationError("trials must be at least 1, got %d" % self.trials)
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1, got %d" % self.workers)
        if not self.schemes:
            raise ConfigurationError("no scheme selected")
        if len(set(self.schemes)) != len(self.schemes):
            raise ConfigurationError("repeated scheme in %s" % ",".join(map(str, self.schemes)))
        if self.seed is not None and self.seed < 0:
            raise ConfigurationError("seed must be non-negative, got %d" % self.seed)
        for n in (self.n,) + (self.n_range or ()):
            if not 1 <= n <= MAX_RECEIVERS:
                raise ConfigurationError("receiver count must be in 1..%d, got %d" % (MAX_RECEIVERS, n))
        if self.omegas is not None:
            if not self.omegas:
                raise ConfigurationError("empty loss probability list")
            for w in self.omegas:
                if not 0.0 <= w < 1.0:
                    raise ConfigurationError("loss probability must be in [0, 1), got %r" % w)
        if self.ber_grid is not None:
            if not self.ber_grid:
                raise ConfigurationError("empty BER grid")
            for b in self.ber_grid:
                if not 0.0 <= b < 1.0:
                    raise ConfigurationError("bit error rate must be in [0, 1), got %r" % b)
        if self.n_range is not None and not self.n_range:
            raise ConfigurationError("empty receiver range")

    @property
    def master_seed(self) -> int:
        if self.seed is not None:
            return self.seed
        env = os.environ.get(SEED_ENV)
        if env:
            try:
                seed = int(env)
            except ValueError:
                raise ConfigurationError("%s must be an integer, got %r" % (SEED_ENV, env))
            if seed < 0:
                raise ConfigurationError("%s must be non-negative, got %d" % (SEED_ENV, seed))
            return seed
        return DEFAULT_SEED

    def topology_for(self, n: int) -> Topology:
        try:
            return Topology.fromKind(self.topology, n, self.r1, self.r2)
        except ValueError as e:
            raise ConfigurationError(str(e))

    def _loss(self, ber: float, model: BerModel) -> float:
        try:
            w = model.loss(ber)
        except ValueError as e:
            raise ConfigurationError(str(e))
        if w >= 1.0:
            raise ConfigurationError("bit error rate %r maps to loss probability 1" % ber)
        return w

    def grid_points(self, mode: str, model: Optional[BerModel]=None) -> List[GridPoint]:
        """Channel settings for 'simulate', 'sweep-ber' or 'sweep-n'; topology checked per point."""
        model = model or BerModel()
        n_default = 2 if self.topology is TopologyKind.X else self.n
        if mode == "simulate":
            if self.omegas is not None:
                points = [GridPoint(len(self.omegas), self.omegas)]
            elif self.ber_grid is not None:
                points = [GridPoint(n_default, [self._loss(b, model)] * n_default, b) for b in self.ber_grid]
            else:
                raise ConfigurationError("simulate needs omegas or a BER grid")
        elif mode == "sweep-ber":
            grid = self.ber_grid if self.ber_grid is not None else parse_grid(DEFAULT_BER_GRID)
            points = [GridPoint(n_default, [self._loss(b, model)] * n_default, b) for b in grid]
        elif mode == "sweep-n":
            n_range = self.n_range if self.n_range is not None else parse_range(DEFAULT_N_RANGE)
            if self.omegas is not None:
                if len(set(self.omegas)) != 1:
                    raise ConfigurationError("sweep-n takes a single loss probability, got %r" % (self.omegas,))
                points = [GridPoint(n, [self.omegas[0]] * n) for n in n_range]
            else:
                grid = self.ber_grid if self.ber_grid is not None else parse_grid(DEFAULT_BER_GRID)
                points = [GridPoint(n, [self._loss(b, model)] * n, b) for b in grid for n in n_range]
        else:
            raise ConfigurationError("unknown experiment mode %r" % mode)
        for p in points:
            self.topology_for(p.n)
        return points

    def k_for(self, point: "GridPoint") -> int:
        """Packets per flow at a grid point: k, raised so the lossiest link expects min_losses losses."""
        w = max(point.omegas) if point.omegas else 0.0
        if w <= 0.0 or self.min_losses == 0:
            return self.k
        return min(MAX_K, max(self.k, int(math.ceil(self.min_losses / w))))

    def override(self, **changes):
        """A copy with every non-None change applied."""
        values = self.asDict()
        for key, value in changes.items():
            if key not in values:
                raise ConfigurationError("unknown configuration key %r" % key)
            if value is not None:
                values[key] = value
        return ExperimentConfig(**values)

    def asDict(self) -> OrderedDict:
        return OrderedDict([("topology", self.topology), ("n", self.n), ("n_range", self.n_range),
                            ("r1", self.r1), ("r2", self.r2), ("omegas", self.omegas),
                            ("ber_grid", self.ber_grid), ("k", self.k), ("min_losses", self.min_losses),
                            ("schemes", self.schemes),
                            ("trials", self.trials), ("seed", self.seed), ("workers", self.workers),
                            ("strict_groups", self.strict_groups), ("out", self.out)])

    @staticmethod
    def fromString(text: str):
        raw = OrderedDict()
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError("line %d: expected 'key = value', got %r" % (lineno, line))
            key, value = (x.strip() for x in line.split("=", 1))
            if key not in KEYS:
                raise ConfigurationError("line %d: unknown key %r" % (lineno, key))
            if key in raw:
                raise ConfigurationError("line %d: key %r given twice" % (lineno, key))
            raw[key] = value
        return ExperimentConfig(**_convert(raw))

    @staticmethod
    def fromFile(path: str):
        with open(path) as f:
            return ExperimentConfig.fromString(f.read())

    def toString(self) -> str:
        lines = []
        for key, value in self.asDict().items():
            if value is None:
                continue
            if key == "topology":
                value = value.value
            elif key == "schemes":
                value = ",".join(s.value for s in value)
            elif key in ("omegas", "ber_grid"):
                value = ",".join(repr(float(v)) for v in value)
            elif key == "n_range":
                value = ",".join(str(v) for v in value)
            elif key == "strict_groups":
                value = "true" if value else "false"
            lines.append("%s = %s" % (key, value))
        return "\n".join(lines) + "\n"

    def _members(self):
        return tuple(self.asDict().items())

    def __eq__(self, other):
        if type(other) is type(self):
            return self._members() == other._members()
        else:
            return False

    def __hash__(self):
        return hash(self._members())

    def __repr__(self):
        return "ExperimentConfig(%s)" % ", ".join("%s=%r" % kv for kv in self.asDict().items())


def _convert(raw: OrderedDict) -> dict:
    res = {}
    try:
        for key, value in raw.items():
            if value == "":
                res[key] = None
            elif key in ("n", "r1", "r2", "k", "min_losses", "trials", "seed", "workers"):
                res[key] = int(value)
            elif key == "n_range":
                res[key] = parse_range(value)
            elif key == "omegas":
                res[key] = parse_csv_floats(value)
            elif key == "ber_grid":
                res[key] = parse_grid(value)
            elif key == "schemes":
                res[key] = tuple(Scheme.fromString(s) for s in value.split(",") if s.strip())
            elif key == "strict_groups":
                res[key] = _parse_bool(value)
            else:
                res[key] = value
    except ConfigurationError:
        raise
    except ValueError as e:
        raise ConfigurationError(str(e))
    return {k: v for k, v in res.items() if v is not None}
