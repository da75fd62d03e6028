# -*- coding: utf-8 -*-
"""Gain curves from a sweep CSV. Needs the 'plot' extra."""
import csv
import logging
from collections import OrderedDict

logger = logging.getLogger(__name__)

GAIN_COLUMNS = ("gain_vs_arq", "gain_vs_nc_arq")


def read_gains(path: str):
    """Aggregate PROPOSED rows as (axis name, {column: [(x, gain), ...]}).

    The axis is the receiver count when it varies across rows, else the first loss rate."""
    with open(path, newline="") as f:
        rows = [r for r in csv.DictReader(f) if r["seed"] == "mean" and r["scheme"] == "proposed"]
    if not rows:
        raise ValueError("no aggregate rows of the proposed scheme in %s" % path)
    by_n = len(set(r["n"] for r in rows)) > 1
    axis = "receivers" if by_n else "loss probability"
    curves = OrderedDict()
    for column in GAIN_COLUMNS:
        points = []
        for r in rows:
            if r[column] == "":
                continue
            x = int(r["n"]) if by_n else float(r["omegas"].split(";")[0])
            points.append((x, float(r[column])))
        if points:
            curves[column] = sorted(points)
    return axis, curves


def plot_csv(path: str, out: str):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    axis, curves = read_gains(path)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for column, points in curves.items():
        xs, ys = zip(*points)
        ax.plot(xs, ys, marker="o", label=column.replace("_", " "))
    ax.set_xlabel(axis)
    ax.set_ylabel("retransmission gain")
    ax.axhline(1.0, color="grey", linewidth=0.5)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    logger.info("[Plot] %s -> %s" % (path, out))
