# -*- coding: utf-8 -*-
"""Command line entry point: closed-form expectations, simulations and sweeps."""
import argparse
import logging
import sys

from ncretx.analytic.Analytic import expected_gain, expected_rescue, expected_transfer, lambda_wheel_nc, \
    lambda_wheel_proposed, lambda_x_nc, lemma1_native_residue, lemma2_native_residue, unicast_expected
from ncretx.analytic.WheelConfig import WheelConfig
from ncretx.base.utils import parse_csv_floats, parse_csv_ints
from ncretx.cli.Experiment import run_experiment
from ncretx.cli.ExperimentConfig import ExperimentConfig, parse_grid, parse_range
from ncretx.patterns.ChannelModel import ChannelModel
from ncretx.patterns.LossPattern import LossPattern
from ncretx.patterns.Patterns import enumerate_patterns, pattern_probability
from ncretx.sim.Scheme import Scheme

logger = logging.getLogger(__name__)

FORMULAS = ("rescue", "transfer", "x_nc", "unicast", "wheel_nc", "wheel_proposed", "gain", "lemma1_residue",
            "lemma2_residue")
EXPERIMENTS = ("simulate", "sweep-ber", "sweep-n")


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ValueError("formula %s needs --%s" % (args.formula, name.replace("_", "-")))


def theory(args):
    _need(args, "omega")
    omegas = parse_csv_floats(args.omega)
    if args.formula == "rescue":
        _need(args, "size", "pattern")
        res = expected_rescue(args.size, LossPattern.fromString(args.pattern), ChannelModel(omegas))
    elif args.formula == "transfer":
        _need(args, "size", "pattern", "to")
        res = expected_transfer(args.size, LossPattern.fromString(args.pattern), LossPattern.fromString(args.to),
                                ChannelModel(omegas))
    elif args.formula == "x_nc":
        res = lambda_x_nc(ChannelModel(omegas))
    elif args.formula == "unicast":
        res = unicast_expected(args.k if args.k is not None else 1, sorted(omegas))
    elif args.formula in ("wheel_nc", "wheel_proposed", "gain"):
        cfg = WheelConfig.normalized(omegas, args.r1, args.r2, args.k if args.k is not None else 1)
        f = {"wheel_nc": lambda_wheel_nc, "wheel_proposed": lambda_wheel_proposed, "gain": expected_gain}
        res = f[args.formula](cfg)
    elif args.formula == "lemma1_residue":
        _need(args, "sizes")
        sizes = parse_csv_floats(args.sizes)
        if len(sizes) != 2 or len(omegas) != 2:
            raise ValueError("lemma1_residue takes two sizes and two loss probabilities")
        res = lemma1_native_residue(sizes[0], sizes[1], omegas[0], omegas[1])
    else:
        _need(args, "sizes")
        res = lemma2_native_residue(parse_csv_floats(args.sizes), omegas)
    for line in res.lines(args.formula):
        print(line)


def patterns(args):
    flows = parse_csv_ints(args.flow)
    ch = ChannelModel(parse_csv_floats(args.omega)) if args.omega is not None else None
    for p in enumerate_patterns(args.n, flows):
        if ch is None:
            print(p)
        else:
            print("%s %r" % (p, pattern_probability(p, ch)))


def _load_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.fromFile(args.config) if args.config is not None else ExperimentConfig()
    schemes = None
    if args.schemes is not None:
        schemes = tuple(Scheme.fromString(s) for s in args.schemes.split(",") if s.strip())
    return cfg.override(
        topology=args.topology, n=args.n, r1=args.r1, r2=args.r2,
        n_range=parse_range(args.n_range) if args.n_range is not None else None,
        omegas=parse_csv_floats(args.omega) if args.omega is not None else None,
        ber_grid=parse_grid(args.ber_grid) if args.ber_grid is not None else None,
        k=args.k, min_losses=args.min_losses, schemes=schemes, trials=args.trials, seed=args.seed,
        workers=args.workers, strict_groups=True if args.strict_groups else None, out=args.out)


def experiment(args):
    cfg = _load_config(args)
    result = run_experiment(cfg, args.command)
    if cfg.out is not None:
        try:
            result.write_csv(cfg.out)
        except OSError as e:
            raise OSError("cannot write %s: %s" % (cfg.out, e.strerror or e))
    for line in result.summary:
        print(line)


def plot(args):
    from ncretx.cli.plot import plot_csv
    plot_csv(args.csv, args.out)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-l", "--logging", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="log level")

    parser = argparse.ArgumentParser(prog="ncretx", description="Coded retransmission for lossy broadcast.")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("theory", parents=[common], help="evaluate a closed-form expectation")
    p.add_argument("formula", choices=FORMULAS)
    p.add_argument("--omega", help="loss probabilities, e.g. 0.2,0.5")
    p.add_argument("--size", type=float, help="pool size")
    p.add_argument("--pattern", help="loss pattern, receiver 1 leftmost, e.g. 011")
    p.add_argument("--to", help="target pattern of a transfer")
    p.add_argument("--k", type=int, help="packets per flow")
    p.add_argument("--r1", type=int, default=1, help="first relevant receiver")
    p.add_argument("--r2", type=int, default=2, help="second relevant receiver")
    p.add_argument("--sizes", help="member sizes of a code group, e.g. 30,50")
    p.set_defaults(func=theory)

    for name in EXPERIMENTS:
        p = sub.add_parser(name, parents=[common], help="run the %s experiment" % name)
        p.add_argument("--config", help="'key = value' experiment file")
        p.add_argument("--topology", choices=["x", "wheel", "unicast"])
        p.add_argument("--n", type=int, help="receiver count")
        p.add_argument("--r1", type=int, help="first relevant receiver")
        p.add_argument("--r2", type=int, help="second relevant receiver")
        p.add_argument("--omega", help="loss probabilities, e.g. 0.1,0.1,0.1")
        p.add_argument("--ber-grid", help="start:stop:step or a comma-separated list")
        p.add_argument("--n-range", help="lo:hi or a comma-separated list")
        p.add_argument("--k", type=int, help="packets per flow, at least")
        p.add_argument("--min-losses", type=int,
                       help="raise k so the lossiest link expects this many losses, 0 to keep k")
        p.add_argument("--schemes", help="comma-separated subset of arq,nc_arq,proposed")
        p.add_argument("--trials", type=int, help="replicas per grid point")
        p.add_argument("--seed", type=int, help="master seed")
        p.add_argument("--out", help="CSV output path")
        p.add_argument("--workers", type=int, help="worker processes")
        p.add_argument("--strict-groups", action="store_true",
                       help="forbid coding when a receiver outside the group holds a packet")
        p.set_defaults(func=experiment)

    p = sub.add_parser("patterns", parents=[common], help="list the loss patterns of a flow")
    p.add_argument("--n", type=int, required=True, help="receiver count")
    p.add_argument("--flow", required=True, help="intended receivers, e.g. 1,2")
    p.add_argument("--omega", help="print each pattern's probability under these loss rates")
    p.set_defaults(func=patterns)

    p = sub.add_parser("plot", parents=[common], help="plot the gains of a sweep CSV")
    p.add_argument("--csv", required=True, help="sweep CSV")
    p.add_argument("--out", required=True, help="image path")
    p.set_defaults(func=plot)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    logging.basicConfig(level=getattr(logging, args.logging), format="%(levelname)s %(name)s %(message)s")
    try:
        args.func(args)
    except ValueError as e:
        parser.error(str(e))
    except OSError as e:
        print("ncretx: %s" % e, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
