"""Run every standard fixed-mass limit study and print the distance sequences."""

import json
import sys

from nlsdefects.oracles import STANDARD_STUDIES, run_limit_study


def run(as_json: bool = False):
    studies = [run_limit_study(f, limit, fixed) for f, limit, fixed in STANDARD_STUDIES]
    if as_json:
        json.dump([s.as_dict() for s in studies], sys.stdout, indent=2)
        print()
        return
    for s in studies:
        d = [p.distance for p in s.points]
        print(f"{s.family:12s} {s.limit:18s} {s.notion:15s} {str(s.metric):15s} "
              f"{d[0]:.3e} -> {d[-1]:.3e}  {s.verdict}")


if __name__ == "__main__":
    run("--json" in sys.argv[1:])
