# -*- coding: utf-8 -*-
"""Closed-form expected retransmission counts."""
import logging
import math
from collections import OrderedDict
from typing import Sequence

from ncretx.analytic.ExpectationResult import ExpectationResult
from ncretx.analytic.WheelConfig import WheelConfig
from ncretx.patterns.ChannelModel import ChannelModel
from ncretx.patterns.LossPattern import LossPattern
from ncretx.patterns.Patterns import can_transfer, conditional_transfer_probability
from ncretx.base.errors import TransferError

logger = logging.getLogger(__name__)


def _check_size(size, name="or_size"):
    if size < 0:
        raise ValueError("%s must be non-negative, got %r" % (name, size))


def expected_rescue(or_size: float, p: LossPattern, ch: ChannelModel) -> ExpectationResult:
    """Slots until a pool of or_size packets in state p leaves p."""
    _check_size(or_size)
    ch.check_receivers(p.n)
    if p.is_full():
        raise ValueError("pattern %s has no receiver left to rescue" % p)
    stay = math.prod(ch.omega(r) for r in p.zeros())
    return ExpectationResult(or_size / (1.0 - stay), extras={"stay_probability": stay})


def expected_transfer(or_size: float, p: LossPattern, q: LossPattern, ch: ChannelModel) -> ExpectationResult:
    """Expected number of the pool's packets that land in q while p is rescued."""
    if not can_transfer(p, q):
        raise TransferError("no transfer from %s to %s" % (p, q))
    rescue = expected_rescue(or_size, p, ch)
    prob = conditional_transfer_probability(p, q, ch)
    return ExpectationResult(rescue.value * prob, extras={"rescue": rescue.value, "transfer_probability": prob})


def x_topology_composition(ch: ChannelModel, k: float=1.0) -> ExpectationResult:
    """Retransmissions for k coded packets on the X topology, built up pool by pool.

    Receivers are taken in ascending loss order. rho0 is [0 0], rho1 = [0 1] is the
    pool only the better receiver lacks, and the native residue is what the lossier
    receiver still needs once rho1 runs out."""
    if ch.n != 2:
        raise ValueError("the X topology has 2 receivers, got %d" % ch.n)
    _check_size(k, "k")
    w1, w2 = sorted(ch.omegas)
    x0 = k * w1 * w2
    x1 = k * w1 * (1.0 - w2)
    x2 = k * (1.0 - w1) * w2
    rho0 = x0 / (1.0 - w1 * w2)
    t01 = rho0 * w1 * (1.0 - w2)
    t02 = rho0 * (1.0 - w1) * w2
    m1 = x1 + t01
    m2 = x2 + t02
    rho1 = m1 / (1.0 - w1)
    native = max(0.0, m2 - m1 * (1.0 - w2) / (1.0 - w1))
    ey = 1.0 / (1.0 - w2)
    terms = OrderedDict([("rho0", rho0), ("rho1", rho1), ("native", ey * native)])
    extras = OrderedDict([("x0", x0), ("x1", x1), ("x2", x2), ("transfer_rho0_rho1", t01),
                          ("transfer_rho0_rho2", t02), ("m1", m1), ("m2", m2),
                          ("omega_native", native), ("ey", ey)])
    return ExpectationResult(sum(terms.values()), terms, extras)


def lambda_x_nc(ch: ChannelModel) -> ExpectationResult:
    """Retransmissions per packet on the X topology under coded retransmission: half of wmax/(1-wmax)."""
    composition = x_topology_composition(ch, 1.0)
    terms = OrderedDict((k, v / 2.0) for k, v in composition.terms.items())
    return ExpectationResult(composition.value / 2.0, terms, composition.extras)


def unicast_expected(k: float, omegas: Sequence[float]) -> ExpectationResult:
    """Retransmissions for k coded one-to-many unicast packets, rates in ascending order."""
    _check_size(k, "k")
    omegas = [float(w) for w in omegas]
    for w in omegas:
        if not 0.0 <= w < 1.0:
            raise ValueError("loss probability must be in [0, 1), got %r" % w)
    if any(a > b for a, b in zip(omegas, omegas[1:])):
        raise ValueError("loss probabilities must be sorted ascending, got %r" % (omegas,))
    terms = OrderedDict()
    for i, w in enumerate(omegas):
        terms["r%d" % (i + 1)] = k * math.prod(omegas[i:]) / (1.0 - w)
    return ExpectationResult(sum(terms.values()), terms)


def lambda_wheel_nc(cfg: WheelConfig) -> ExpectationResult:
    """Coded-ARQ retransmissions per packet on the wheel.

    The coded packets cost what the better relevant receiver loses. The lossier one
    is left with a native residue that is rescued together with the irrelevant flows."""
    k, n = float(cfg.k), cfg.n
    w1 = cfg.omegas.omega(cfg.r1)
    w2 = cfg.omegas.omega(cfg.r2)
    omega_code = k * w1 / (1.0 - w1)
    omega_native = k * (w2 - w1) / (1.0 - w1)
    rest1 = sorted(cfg.omegas.without([cfg.r1]))
    rest2 = sorted(cfg.omegas.without([cfg.r1, cfg.r2]))
    omega_1 = unicast_expected(omega_native, rest1).value
    omega_2 = unicast_expected(k - omega_native, rest2).value
    kn = k * n
    terms = OrderedDict([("code", omega_code / kn), ("native", omega_1 / kn), ("irrelevant", omega_2 / kn)])
    extras = OrderedDict([("omega_code", omega_code), ("omega_native", omega_native),
                          ("omega_1", omega_1), ("omega_2", omega_2)])
    return ExpectationResult(sum(terms.values()), terms, extras)


def lambda_wheel_proposed(cfg: WheelConfig) -> ExpectationResult:
    """Retransmissions per packet on the wheel when the better relevant flow is absorbed."""
    rest = sorted(cfg.omegas.without([cfg.r1]))
    unicast = unicast_expected(1.0, rest)
    terms = OrderedDict((name, v / cfg.n) for name, v in unicast.terms.items())
    return ExpectationResult(unicast.value / cfg.n, terms)


def lemma1_native_residue(size_small: float, size_large: float, w_small: float, w_large: float) \
        -> ExpectationResult:
    """Packets of the larger set still unsent when the smaller set of a two-member group runs out."""
    _check_size(size_small, "size_small")
    _check_size(size_large, "size_large")
    for w in (w_small, w_large):
        if not 0.0 <= w < 1.0:
            raise ValueError("loss probability must be in [0, 1), got %r" % w)
    if size_small > size_large:
        raise ValueError("size_small=%r exceeds size_large=%r" % (size_small, size_large))
    if w_small > w_large:
        raise ValueError("w_small=%r exceeds w_large=%r" % (w_small, w_large))
    drained = size_small * (1.0 - w_large) / (1.0 - w_small)
    return ExpectationResult(size_large - drained, extras={"coded_deliveries": drained})


def lemma2_native_residue(sizes: Sequence[float], omegas: Sequence[float]) -> ExpectationResult:
    """Uncoded residue of the dominant member of an n-member group, against the sub-dominant member."""
    if len(sizes) != len(omegas):
        raise ValueError("%d sizes but %d loss probabilities" % (len(sizes), len(omegas)))
    if len(sizes) < 2:
        raise ValueError("a code group has at least 2 members, got %d" % len(sizes))
    for s in sizes:
        _check_size(s, "size")
    for w in omegas:
        if not 0.0 <= w < 1.0:
            raise ValueError("loss probability must be in [0, 1), got %r" % w)
    order = sorted(range(len(sizes)), key=lambda i: (sizes[i], omegas[i], -i))
    d, s = order[-1], order[-2]
    residue = max(0.0, sizes[d] - sizes[s] * (1.0 - omegas[d]) / (1.0 - omegas[s]))
    return ExpectationResult(residue, extras=OrderedDict([("dominant", d + 1), ("subdominant", s + 1)]))


def lambda_arq(ch: ChannelModel) -> ExpectationResult:
    """Plain per-receiver retransmission, one term per flow."""
    terms = OrderedDict(("r%d" % r, w / (1.0 - w) / ch.n) for r, w in enumerate(ch.omegas, 1))
    return ExpectationResult(sum(terms.values()), terms)


def lambda_unicast_nc(ch: ChannelModel) -> ExpectationResult:
    """Coded retransmission for n flows that share nothing in the original phase."""
    unicast = unicast_expected(1.0, sorted(ch.omegas))
    terms = OrderedDict((name, v / ch.n) for name, v in unicast.terms.items())
    return ExpectationResult(unicast.value / ch.n, terms)


def expected_gain(cfg: WheelConfig) -> ExpectationResult:
    nc = lambda_wheel_nc(cfg).value
    proposed = lambda_wheel_proposed(cfg).value
    if proposed == 0.0:
        if nc != 0.0:
            logger.warning("[Gain] proposed scheme needs no retransmissions, gain is infinite")
        gain = 1.0 if nc == 0.0 else math.inf
    else:
        gain = nc / proposed
    return ExpectationResult(gain, extras=OrderedDict([("lambda_nc", nc), ("lambda_proposed", proposed)]))
