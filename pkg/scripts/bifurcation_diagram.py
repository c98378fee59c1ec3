"""Action-vs-frequency and energy-vs-mass tables for the delta-prime families.

    python3 scripts/bifurcation_diagram.py --gamma 1 --lambda 1 --outdir out/
"""

import argparse
import pathlib

from nlsdefects.cli import main


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--gamma", default="1")
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("bifurcation_out"))
    return p.parse_args()


def run():
    args = parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    common = ["--gamma", args.gamma, "--lambda", args.lam]
    tables = {
        "action_vs_omega.csv": ["--sweep", "0.1:40:400:log", "--observable", "action"],
        "gaps_plus.csv": ["--sweep", "0.1:40:400:log", "--observable", "gap_plus"],
        "gaps_minus.csv": ["--sweep", "0.1:40:400:log", "--observable", "gap_minus"],
        "energy_vs_mass.csv": ["--parameter", "rho", "--sweep", "0.05:20:400", "--observable", "energy"],
        "centers_vs_omega.csv": ["--sweep", "0.1:40:400:log", "--observable", "centers"],
    }
    for name, argv in tables.items():
        code = main(["bifurcation", *common, *argv, "--output", str(args.outdir / name)])
        if code:
            raise SystemExit(code)
        print(args.outdir / name)


if __name__ == "__main__":
    run()
