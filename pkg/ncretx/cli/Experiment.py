# -*- coding: utf-8 -*-
"""Grid sweeps: replicas of every scheme at every grid point, aggregated against theory."""
import csv
import logging
import math
import os
import tempfile
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from ncretx.analytic.Analytic import lambda_arq, lambda_unicast_nc, lambda_wheel_nc, lambda_wheel_proposed, \
    lambda_x_nc
from ncretx.analytic.WheelConfig import WheelConfig
from ncretx.cli.ExperimentConfig import ExperimentConfig, GridPoint
from ncretx.patterns.ChannelModel import ChannelModel
from ncretx.sim.Scheme import Scheme
from ncretx.sim.SimReport import retransmission_gain
from ncretx.sim.Simulator import Simulator
from ncretx.sim.Topology import Topology, TopologyKind
from ncretx.sim.seeding import replica_rng

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("seed", "scheme", "n", "omegas", "k", "retransmissions", "lambda_hat", "stderr", "lambda_theory",
               "gain_vs_arq", "gain_vs_nc_arq")


def theory_lambda(topo: Topology, ch: ChannelModel, scheme: Scheme, k: int=1) -> Optional[float]:
    """Closed-form retransmissions per packet, or None where no formula applies."""
    if scheme is Scheme.ARQ:
        return lambda_arq(ch).value
    if topo.kind is TopologyKind.X:
        return lambda_x_nc(ch).value
    if topo.kind is TopologyKind.WHEEL:
        cfg = WheelConfig.normalized(ch.omegas, topo.relevant[0], topo.relevant[1], k)
        if scheme is Scheme.NC_ARQ:
            return lambda_wheel_nc(cfg).value
        return lambda_wheel_proposed(cfg).value
    if scheme is Scheme.NC_ARQ:
        return lambda_unicast_nc(ch).value
    return None


def _run_replica(task):
    kind, n, r1, r2, omegas, k, scheme, strict, master_seed, point_index, replica = task
    topo = Topology.fromKind(TopologyKind(kind), n, r1, r2)
    rng, seed = replica_rng(master_seed, point_index, replica)
    sim = Simulator(topo, ChannelModel(omegas), k, Scheme(scheme), strict)
    report = sim.simulate(rng, seed)
    return seed, report.retransmissions, report.lambda_hat


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


class ExperimentResult(object):
    """CSV rows, replicas first then one aggregate row per (grid point, scheme), plus summary lines."""

    def __init__(self, rows: List[OrderedDict], summary: List[str]):
        self.rows = rows
        self.summary = summary

    def aggregates(self) -> List[OrderedDict]:
        return [r for r in self.rows if r["seed"] == "mean"]

    def write_csv(self, path: str):
        """Write to a temporary file next to path, then rename over it."""
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(prefix=".ncretx-", suffix=".csv", dir=directory)
        try:
            with os.fdopen(fd, "w", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(CSV_COLUMNS)
                for row in self.rows:
                    writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.info("[Experiment] wrote %d rows to %s" % (len(self.rows), path))


def _pooled_gain(by_scheme: OrderedDict, baseline: Scheme) -> Optional[float]:
    """Total baseline retransmissions over total proposed ones, summed over replicas."""
    if Scheme.PROPOSED not in by_scheme or baseline not in by_scheme:
        return None
    return retransmission_gain(sum(r for _, r, _ in by_scheme[baseline]),
                               sum(r for _, r, _ in by_scheme[Scheme.PROPOSED]))


def run_experiment(cfg: ExperimentConfig, mode: str="simulate") -> ExperimentResult:
    points = cfg.grid_points(mode)
    master_seed = cfg.master_seed
    tasks = []
    for pi, point in enumerate(points):
        k = cfg.k_for(point)
        if k != cfg.k:
            logger.debug("[Experiment] point %d: k raised to %d" % (pi, k))
        for scheme in cfg.schemes:
            for replica in range(cfg.trials):
                tasks.append((cfg.topology.value, point.n, cfg.r1, cfg.r2, point.omegas, k, scheme.value,
                              cfg.strict_groups, master_seed, pi, replica))
    logger.info("[Experiment] %d grid points x %d schemes x %d trials, seed %d"
                % (len(points), len(cfg.schemes), cfg.trials, master_seed))

    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_replica, tasks, chunksize=max(1, len(tasks) // (4 * cfg.workers))))
    else:
        results = [_run_replica(t) for t in tasks]

    it = iter(results)
    rows, summary = [], []
    for pi, point in enumerate(points):
        by_scheme = OrderedDict((scheme, [next(it) for _ in range(cfg.trials)]) for scheme in cfg.schemes)
        rows_point, aggregates = _point_rows(cfg, point, by_scheme)
        rows += rows_point
        rows += aggregates
        summary += _summary_lines(point, aggregates)
    for line in summary:
        logger.info("[Summary] %s" % line)
    return ExperimentResult(rows, summary)


def _point_rows(cfg: ExperimentConfig, point: GridPoint, by_scheme: OrderedDict):
    topo = cfg.topology_for(point.n)
    ch = ChannelModel(point.omegas)
    omegas = ";".join(repr(w) for w in point.omegas)
    k = cfg.k_for(point)
    rows, aggregates = [], []
    for scheme, replicas in by_scheme.items():
        for i, (seed, retrans, lam) in enumerate(replicas):
            row = OrderedDict([("seed", seed), ("scheme", scheme.value), ("n", point.n), ("omegas", omegas),
                               ("k", k), ("retransmissions", retrans), ("lambda_hat", lam), ("stderr", None),
                               ("lambda_theory", None), ("gain_vs_arq", None), ("gain_vs_nc_arq", None)])
            if scheme is Scheme.PROPOSED:
                for baseline, column in ((Scheme.ARQ, "gain_vs_arq"), (Scheme.NC_ARQ, "gain_vs_nc_arq")):
                    if baseline in by_scheme:
                        row[column] = retransmission_gain(by_scheme[baseline][i][1], retrans)
            rows.append(row)
        lams = np.array([lam for _, _, lam in replicas], dtype=float)
        stderr = float(np.std(lams, ddof=1) / math.sqrt(len(lams))) if len(lams) > 1 else 0.0
        aggregates.append(OrderedDict([
            ("seed", "mean"), ("scheme", scheme.value), ("n", point.n), ("omegas", omegas), ("k", k),
            ("retransmissions", float(np.mean([r for _, r, _ in replicas]))),
            ("lambda_hat", float(np.mean(lams))), ("stderr", stderr),
            ("lambda_theory", theory_lambda(topo, ch, scheme, k)), ("gain_vs_arq", None), ("gain_vs_nc_arq", None)]))
        if scheme is Scheme.PROPOSED:
            aggregates[-1]["gain_vs_arq"] = _pooled_gain(by_scheme, Scheme.ARQ)
            aggregates[-1]["gain_vs_nc_arq"] = _pooled_gain(by_scheme, Scheme.NC_ARQ)
    return rows, aggregates


def _summary_lines(point: GridPoint, aggregates: Sequence[OrderedDict]) -> List[str]:
    lines = []
    where = "n=%d omegas=%s" % (point.n, ",".join("%.6g" % w for w in point.omegas))
    if point.ber is not None:
        where += " ber=%g" % point.ber
    for agg in aggregates:
        line = "%s %s: lambda_hat=%.6f +- %.6f" % (where, agg["scheme"], agg["lambda_hat"], agg["stderr"])
        theory = agg["lambda_theory"]
        if theory is not None:
            if theory > 0:
                line += ", theory=%.6f (%+.2f%%)" % (theory, 100.0 * (agg["lambda_hat"] - theory) / theory)
            else:
                line += ", theory=%.6f" % theory
        for column in ("gain_vs_arq", "gain_vs_nc_arq"):
            if agg[column] is not None:
                line += ", %s=%.4f" % (column, agg[column])
        lines.append(line)
    return lines
