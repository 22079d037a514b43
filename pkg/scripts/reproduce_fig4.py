#!/usr/bin/env python3
"""Generate the four fringe/correlation datasets (static delta_phi = 0 and
pi, pulse-mode averages, and the g2 curve) as CSV files, optionally with a
quick-look plot.

Usage: python scripts/reproduce_fig4.py [--outdir DIR] [--plot]
"""

import argparse
import math
import pathlib

from cohmzi.cli import RunConfig, compute_sweep, render_records

PULSE = {"period": 1e-3, "duty": 0.5, "n": 10, "spp": 20}


def run(outdir: pathlib.Path, plot: bool) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    panels = {
        "panel_a_static_dphi0": RunConfig(0.0, 4 * math.pi, 401, 1.0, 0.0, None,
                                          math.pi, "csv", None, None, 0.0),
        "panel_b_static_dphipi": RunConfig(0.0, 4 * math.pi, 401, 1.0, math.pi, None,
                                           math.pi, "csv", None, None, 0.0),
        "panel_cd_pulse": RunConfig(0.0, 4 * math.pi, 401, 1.0, 0.0, PULSE,
                                    math.pi, "csv", None, None, 0.0),
    }
    data = {}
    for name, config in panels.items():
        records = compute_sweep(config)
        path = outdir / f"{name}.csv"
        path.write_text(render_records(records, "csv"))
        data[name] = records
        print(f"wrote {path} ({len(records)} records)")

    if plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex=True)
        for ax, (name, records) in zip(axes.flat[:3], data.items()):
            zeta = [r.zeta for r in records]
            ax.plot(zeta, [r.i_a for r in records], label="I_A")
            ax.plot(zeta, [r.i_b for r in records], label="I_B")
            ax.set_title(name)
            ax.legend(fontsize=8)
        records = data["panel_cd_pulse"]
        axes.flat[3].plot([r.zeta for r in records], [r.g2 for r in records], "k")
        axes.flat[3].set_title("g2(zeta)")
        for ax in axes.flat:
            ax.set_xlabel("zeta (rad)")
        fig.tight_layout()
        target = outdir / "fig4.png"
        fig.savefig(target, dpi=150)
        print(f"wrote {target}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="fig4_out", type=pathlib.Path)
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()
    run(args.outdir, args.plot)


if __name__ == "__main__":
    main()
