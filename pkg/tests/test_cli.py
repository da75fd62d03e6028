#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for `ncretx.cli` package."""

import csv
import importlib.util
import io
import math
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from decimal import Decimal, getcontext
from unittest import mock

from ncretx.base.errors import ConfigurationError
from ncretx.cli.BerModel import BerModel, ber_to_loss
from ncretx.cli.Experiment import CSV_COLUMNS, run_experiment, theory_lambda
from ncretx.cli.ExperimentConfig import DEFAULT_SEED, MAX_K, SEED_ENV, ExperimentConfig, GridPoint, parse_grid, \
    parse_range
from ncretx.cli.cli import main
from ncretx.cli.plot import read_gains
from ncretx.patterns.ChannelModel import ChannelModel
from ncretx.sim.Scheme import Scheme
from ncretx.sim.Topology import Topology


def exact_loss(ber):
    """Packet loss of 1532-byte packets under RS(32, 28) with 8-bit symbols, in 60-digit decimals."""
    getcontext().prec = 60
    b = Decimal(repr(ber))
    ps = 1 - (1 - b) ** 8
    ok = sum(Decimal(c) * ps ** e * (1 - ps) ** (32 - e) for e, c in ((0, 1), (1, 32), (2, 496)))
    q = 1 - ok
    return float(1 - (1 - q) ** 55)


class TestBerModel(unittest.TestCase):
    """Tests for `ncretx.cli.BerModel`."""

    def setUp(self):
        """Set up test fixtures, if any."""
        self.model = BerModel()

    def tearDown(self):
        """Tear down test fixtures, if any."""

    def test_constants(self):
        self.assertEqual(self.model.correctable, 2)
        self.assertEqual(self.model.blocks, 55)

    def test_against_exact(self):
        for ber in (1e-4, 6e-4, 2e-3, 3e-3, 3.5e-3):
            self.assertAlmostEqual(ber_to_loss(ber) / exact_loss(ber), 1.0, places=7)

    def test_shape(self):
        self.assertEqual(ber_to_loss(0.0), 0.0)
        self.assertAlmostEqual(ber_to_loss(1e-4), 1.3711e-4, delta=1e-7)
        self.assertAlmostEqual(ber_to_loss(2e-3), 0.54, delta=0.02)
        self.assertAlmostEqual(ber_to_loss(3e-3), 0.89, delta=0.02)
        grid = parse_grid("1e-4:3.5e-3:5e-4")
        losses = [ber_to_loss(b) for b in grid]
        self.assertEqual(losses, sorted(losses))
        with self.assertRaises(ValueError):
            ber_to_loss(1.0)
        with self.assertRaises(ValueError):
            BerModel(rs_n=28, rs_k=28)


class TestExperimentConfig(unittest.TestCase):
    """Tests for `ncretx.cli.ExperimentConfig`."""

    def setUp(self):
        """Set up test fixtures, if any."""
        self.cfg = ExperimentConfig(topology="x", n=2, n_range=(3, 4), omegas=(0.2, 0.5), ber_grid=(1e-4, 6e-4),
                                    k=100, schemes=(Scheme.NC_ARQ, Scheme.PROPOSED), trials=2, seed=7,
                                    strict_groups=True, out="gains.csv")

    def tearDown(self):
        """Tear down test fixtures, if any."""

    def test_round_trip(self):
        self.assertEqual(ExperimentConfig.fromString(self.cfg.toString()), self.cfg)
        self.assertEqual(ExperimentConfig.fromString(ExperimentConfig().toString()), ExperimentConfig())

    def test_from_string(self):
        cfg = ExperimentConfig.fromString("# wheel sweep\n"
                                          "topology = wheel\n"
                                          "\n"
                                          "omegas = 0.1, 0.1, 0.1   # symmetric\n"
                                          "schemes = nc_arq,proposed\n"
                                          "ber_grid = 1e-4:1.1e-3:5e-4\n")
        self.assertEqual(cfg.omegas, (0.1, 0.1, 0.1))
        self.assertEqual(cfg.schemes, (Scheme.NC_ARQ, Scheme.PROPOSED))
        self.assertEqual(cfg.ber_grid, (1e-4, 6e-4, 1.1e-3))
        for bad in ("k = 0", "trials = 0", "colour = red", "k 10", "k = 1\nk = 2", "omegas = 0.1,1.0",
                    "schemes = harq", "strict_groups = maybe", "n = 64", "seed = -3", "min_losses = -1"):
            with self.assertRaises(ConfigurationError):
                ExperimentConfig.fromString(bad)

    def test_override(self):
        cfg = self.cfg.override(k=10, seed=None)
        self.assertEqual(cfg.k, 10)
        self.assertEqual(cfg.seed, 7)
        with self.assertRaises(ConfigurationError):
            self.cfg.override(colour="red")

    def test_master_seed(self):
        with mock.patch.dict(os.environ, {SEED_ENV: "99"}):
            self.assertEqual(ExperimentConfig().master_seed, 99)
            self.assertEqual(self.cfg.master_seed, 7)
        with mock.patch.dict(os.environ, {SEED_ENV: ""}):
            self.assertEqual(ExperimentConfig().master_seed, DEFAULT_SEED)
        with mock.patch.dict(os.environ, {SEED_ENV: "abc"}):
            with self.assertRaises(ConfigurationError):
                ExperimentConfig().master_seed

    def test_grids(self):
        self.assertEqual(len(parse_grid("1e-4:3.5e-3:5e-4")), 7)
        self.assertEqual(parse_grid("1e-4:3.5e-3:5e-4")[-1], 3.1e-3)
        self.assertEqual(parse_grid("0.1:0.3:0.1"), (0.1, 0.2, 0.3))
        self.assertEqual(parse_grid("0.2,0.1"), (0.2, 0.1))
        self.assertEqual(parse_range("3:5"), (3, 4, 5))
        self.assertEqual(parse_range("3,9"), (3, 9))
        for bad in ("1:0:1", "0:1:0", "0:1", "a:b:c"):
            with self.assertRaises(ConfigurationError):
                parse_grid(bad)

    def test_grid_points(self):
        points = self.cfg.grid_points("simulate")
        self.assertEqual(len(points), 1)
        self.assertEqual(points[0].omegas, (0.2, 0.5))
        sweep = ExperimentConfig(ber_grid=(1e-4, 2e-3)).grid_points("sweep-ber")
        self.assertEqual([p.n for p in sweep], [3, 3])
        self.assertAlmostEqual(sweep[1].omegas[0], ber_to_loss(2e-3))
        by_n = ExperimentConfig(omegas=(0.1,), n_range=(3, 5)).grid_points("sweep-n")
        self.assertEqual([p.n for p in by_n], [3, 5])
        self.assertEqual(by_n[1].omegas, (0.1,) * 5)
        with self.assertRaises(ConfigurationError):
            ExperimentConfig().grid_points("simulate")
        with self.assertRaises(ConfigurationError):
            ExperimentConfig(topology="wheel", omegas=(0.1, 0.1)).grid_points("simulate")
        with self.assertRaises(ConfigurationError):
            self.cfg.grid_points("plot")

    def test_default_ber_grid(self):
        sweep = ExperimentConfig().grid_points("sweep-ber")
        self.assertEqual(len(sweep), 8)
        self.assertEqual(sweep[0].ber, 1e-4)
        self.assertEqual(sweep[-1].ber, 3.5e-3)
        self.assertTrue(all(p.omegas[0] < 1.0 for p in sweep))

    def test_k_for(self):
        cfg = ExperimentConfig(omegas=(0.1, 0.2, 0.3), k=100, min_losses=200)
        point = cfg.grid_points("simulate")[0]
        self.assertEqual(cfg.k_for(point), 667)
        self.assertEqual(cfg.override(min_losses=0).k_for(point), 100)
        self.assertEqual(cfg.override(k=5000).k_for(point), 5000)
        self.assertEqual(cfg.k_for(GridPoint(3, (0.0, 0.0, 0.0))), 100)
        low = ExperimentConfig(ber_grid=(1e-4,)).grid_points("sweep-ber")[0]
        self.assertEqual(cfg.override(min_losses=1000).k_for(low), math.ceil(1000 / low.omegas[0]))
        self.assertEqual(cfg.override(min_losses=10 ** 4).k_for(low), MAX_K)


class TestExperiment(unittest.TestCase):
    """Tests for `ncretx.cli.Experiment`."""

    def setUp(self):
        """Set up test fixtures, if any."""
        self.dir = tempfile.mkdtemp()
        self.cfg = ExperimentConfig(topology="wheel", omegas=(0.1, 0.2, 0.3), k=40, trials=2, seed=5)

    def tearDown(self):
        """Tear down test fixtures, if any."""
        shutil.rmtree(self.dir)

    def _read(self, path):
        with open(path, "rb") as f:
            return f.read()

    def test_theory_lambda(self):
        ch = ChannelModel([0.1, 0.1, 0.1])
        self.assertAlmostEqual(theory_lambda(Topology.wheel(3), ch, Scheme.ARQ), 0.1 / 0.9)
        self.assertAlmostEqual(theory_lambda(Topology.wheel(3), ch, Scheme.NC_ARQ), 0.074074, places=6)
        self.assertAlmostEqual(theory_lambda(Topology.wheel(3), ch, Scheme.PROPOSED), 0.040741, places=6)
        self.assertAlmostEqual(theory_lambda(Topology.x(), ChannelModel([0.2, 0.5]), Scheme.NC_ARQ), 0.5)
        self.assertIsNone(theory_lambda(Topology.unicast(3), ch, Scheme.PROPOSED))

    def test_rows(self):
        result = run_experiment(self.cfg)
        aggregates = result.aggregates()
        self.assertEqual([a["scheme"] for a in aggregates], ["arq", "nc_arq", "proposed"])
        self.assertEqual(len(result.rows), 3 * 2 + 3)
        proposed = aggregates[2]
        self.assertIsNotNone(proposed["gain_vs_arq"])
        self.assertIsNotNone(proposed["gain_vs_nc_arq"])
        self.assertIsNone(aggregates[0]["gain_vs_arq"])
        self.assertEqual(len(result.summary), 3)
        # every scheme sees the same original-phase draws
        seeds = [r["seed"] for r in result.rows if r["seed"] != "mean"]
        self.assertEqual(seeds[0:2], seeds[2:4])
        # k raised so the 0.3 link expects 200 losses
        self.assertEqual({r["k"] for r in result.rows}, {667})

    def test_gain_pools_replicas(self):
        result = run_experiment(self.cfg.override(trials=3))
        total = {}
        for r in result.rows:
            if r["seed"] != "mean":
                total[r["scheme"]] = total.get(r["scheme"], 0) + r["retransmissions"]
        proposed = result.aggregates()[2]
        self.assertAlmostEqual(proposed["gain_vs_arq"], total["arq"] / total["proposed"])
        self.assertAlmostEqual(proposed["gain_vs_nc_arq"], total["nc_arq"] / total["proposed"])

    def _gains(self, cfg, mode):
        return [a["gain_vs_nc_arq"] for a in run_experiment(cfg, mode).aggregates() if a["scheme"] == "proposed"]

    def test_gain_falls_with_ber(self):
        cfg = ExperimentConfig(topology="wheel", ber_grid=(1e-4, 2e-3), k=100, min_losses=300,
                               schemes=(Scheme.NC_ARQ, Scheme.PROPOSED), trials=4, seed=11)
        low, high = self._gains(cfg, "sweep-ber")
        self.assertGreaterEqual(low, 1.7)
        self.assertLessEqual(low, 2.3)
        self.assertGreaterEqual(high, 1.0)
        self.assertLess(high, low)

    def test_gain_flat_in_n(self):
        cfg = ExperimentConfig(topology="wheel", ber_grid=(2e-3,), n_range=(3, 4), k=100, min_losses=300,
                               schemes=(Scheme.NC_ARQ, Scheme.PROPOSED), trials=4, seed=13)
        g3, g4 = self._gains(cfg, "sweep-n")
        self.assertGreaterEqual(min(g3, g4), 1.0)
        self.assertLessEqual(abs(g4 - g3), 0.15 * (g3 + g4) / 2)

    def test_csv_deterministic(self):
        paths = [os.path.join(self.dir, "run%d.csv" % i) for i in range(2)]
        for path in paths:
            run_experiment(self.cfg).write_csv(path)
        self.assertEqual(self._read(paths[0]), self._read(paths[1]))
        with open(paths[0], newline="") as f:
            rows = list(csv.reader(f))
        self.assertEqual(tuple(rows[0]), CSV_COLUMNS)
        self.assertEqual(rows[1][3], "0.1;0.2;0.3")
        self.assertEqual(sorted(os.listdir(self.dir)), ["run0.csv", "run1.csv"])


class TestCli(unittest.TestCase):
    """Tests for `ncretx.cli.cli`."""

    def setUp(self):
        """Set up test fixtures, if any."""
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        """Tear down test fixtures, if any."""
        shutil.rmtree(self.dir)

    def _run(self, argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            try:
                code = main(argv)
            except SystemExit as e:
                code = e.code
        return code, out.getvalue().splitlines()

    def _value(self, lines):
        return float(lines[0].split("=", 1)[1])

    def test_theory(self):
        code, lines = self._run(["theory", "x_nc", "--omega", "0.2,0.5"])
        self.assertEqual(code, 0)
        self.assertTrue(lines[0].startswith("x_nc="))
        self.assertAlmostEqual(self._value(lines), 0.5)
        code, lines = self._run(["theory", "wheel_proposed", "--omega", "0,0,0", "--r1", "1"])
        self.assertEqual(code, 0)
        self.assertEqual(self._value(lines), 0.0)
        code, lines = self._run(["theory", "rescue", "--size", "10", "--pattern", "011", "--omega", "0.5,0.3,0.3"])
        self.assertEqual(code, 0)
        self.assertAlmostEqual(self._value(lines), 20.0)
        code, lines = self._run(["theory", "lemma1_residue", "--sizes", "100,100", "--omega", "0.2,0.5"])
        self.assertAlmostEqual(self._value(lines), 37.5)
        code, lines = self._run(["theory", "wheel_nc", "--omega", "0.1,0.1,0.1"])
        self.assertAlmostEqual(self._value(lines), 0.074074, places=6)
        self.assertIn("wheel_nc.code", lines[1])

    def test_theory_errors(self):
        self.assertEqual(self._run(["theory", "fig7", "--omega", "0.1"])[0], 2)
        self.assertEqual(self._run(["theory", "x_nc", "--omega", "0.1,0.2,0.3"])[0], 2)
        self.assertEqual(self._run(["theory", "rescue", "--omega", "0.1,0.2"])[0], 2)
        self.assertEqual(self._run(["theory", "x_nc", "--omega", "0.1,1.5"])[0], 2)
        self.assertEqual(self._run([])[0], 2)

    def test_patterns(self):
        code, lines = self._run(["patterns", "--n", "3", "--flow", "3"])
        self.assertEqual(code, 0)
        self.assertEqual(lines, ["000", "010", "100", "110"])

    def test_simulate(self):
        out = os.path.join(self.dir, "x.csv")
        code, lines = self._run(["simulate", "--topology", "x", "--omega", "0.2,0.5", "--k", "30", "--trials", "2",
                                 "--schemes", "arq,nc_arq", "--seed", "1", "--out", out])
        self.assertEqual(code, 0)
        self.assertEqual(len(lines), 2)
        with open(out, newline="") as f:
            self.assertEqual(len(list(csv.reader(f))), 1 + 2 * 2 + 2)

    def test_config_file(self):
        path = os.path.join(self.dir, "exp.cfg")
        with open(path, "w") as f:
            f.write(ExperimentConfig(topology="x", omegas=(0.3, 0.3), k=20, trials=1, seed=3,
                                     schemes=(Scheme.NC_ARQ,)).toString())
        code, lines = self._run(["simulate", "--config", path, "--k", "10"])
        self.assertEqual(code, 0)
        self.assertEqual(len(lines), 1)
        self.assertIn("nc_arq", lines[0])

    def test_io_errors(self):
        missing = os.path.join(self.dir, "nowhere", "x.csv")
        code, _ = self._run(["simulate", "--topology", "x", "--omega", "0.2,0.5", "--k", "5", "--trials", "1",
                             "--out", missing])
        self.assertEqual(code, 1)
        code, _ = self._run(["simulate", "--config", os.path.join(self.dir, "missing.cfg")])
        self.assertEqual(code, 1)
        code, _ = self._run(["simulate", "--trials", "0", "--omega", "0.1,0.1,0.1"])
        self.assertEqual(code, 2)


HAS_MATPLOTLIB = importlib.util.find_spec("matplotlib") is not None


class TestPlot(unittest.TestCase):
    """Tests for `ncretx.cli.plot`."""

    def setUp(self):
        """Set up test fixtures, if any."""
        self.dir = tempfile.mkdtemp()
        self.csv = os.path.join(self.dir, "sweep.csv")
        cfg = ExperimentConfig(topology="wheel", ber_grid=(5e-4, 2e-3), k=20, min_losses=20, trials=2, seed=4)
        run_experiment(cfg, "sweep-ber").write_csv(self.csv)

    def tearDown(self):
        """Tear down test fixtures, if any."""
        shutil.rmtree(self.dir)

    def test_read_gains(self):
        axis, curves = read_gains(self.csv)
        self.assertEqual(axis, "loss probability")
        self.assertEqual(list(curves), ["gain_vs_arq", "gain_vs_nc_arq"])
        xs = [x for x, _ in curves["gain_vs_nc_arq"]]
        self.assertEqual(xs, [ber_to_loss(5e-4), ber_to_loss(2e-3)])
        empty = os.path.join(self.dir, "empty.csv")
        with open(empty, "w") as f:
            f.write(",".join(CSV_COLUMNS) + "\n")
        with self.assertRaises(ValueError):
            read_gains(empty)

    @unittest.skipUnless(HAS_MATPLOTLIB, "needs the plot extra")
    def test_plot_csv(self):
        out = os.path.join(self.dir, "gains.png")
        code = main(["plot", "--csv", self.csv, "--out", out])
        self.assertEqual(code, 0)
        self.assertGreater(os.path.getsize(out), 0)
