"""Plot a CSV written by ``isac run`` or ``isac reproduce``.

    python3 scripts/plot_csv.py results.csv [--x eps1] [--out fig.png]

Needs matplotlib (``pip install artifact[plot]``).  One line is drawn per
(metric, engine) pair.  Monte Carlo rows carry their CI half-width as error bars.
"""
from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict


def _num(s: str):
    try:
        return float(s)
    except (TypeError, ValueError):
        return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("--x", help="column for the x axis (default: sweep_value)")
    ap.add_argument("--out", help="save instead of showing")
    ap.add_argument("--logx", action="store_true")
    args = ap.parse_args(argv)
    try:
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is not installed", file=sys.stderr)
        return 1

    with open(args.csv, newline="") as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    if not rows:
        print("no rows", file=sys.stderr)
        return 1
    xcol = args.x or "sweep_value"
    groups = defaultdict(list)
    for r in rows:
        groups[(r["metric"], r["engine"])].append(r)
    fig, ax = plt.subplots()
    for (metric, engine), rs in sorted(groups.items()):
        rs.sort(key=lambda r: _num(r[xcol]))
        x = [_num(r[xcol]) for r in rs]
        y = [_num(r["value"]) for r in rs]
        hw = [_num(r.get("ci_half_width")) for r in rs]
        if all(h is not None for h in hw):
            ax.errorbar(x, y, yerr=hw, fmt="o", capsize=3, label=f"{metric} ({engine})")
        else:
            ax.plot(x, y, "-", label=f"{metric} ({engine})")
    if args.x is None:
        xcol = rows[0].get("sweep_param", xcol)
    ax.set_xlabel(xcol)
    ax.set_ylabel("value")
    if args.logx:
        ax.set_xscale("log")
    ax.legend(fontsize="small")
    if args.out:
        fig.savefig(args.out, dpi=150, bbox_inches="tight")
    else:
        plt.show()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
