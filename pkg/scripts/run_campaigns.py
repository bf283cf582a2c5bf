#!/usr/bin/env python3
"""Run every verification campaign at its full bound and save JSON reports.

    python scripts/run_campaigns.py [--out results] [--jobs N] [name ...]
"""

import argparse
import json
import pathlib
import sys

from newton_dm1.campaigns import BOUNDS, DEFAULT_SEED, run_campaign


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("names", nargs="*", default=sorted(BOUNDS), help="campaigns to run (default: all)")
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results"))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args(argv)

    args.out.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for name in args.names:
        rep = run_campaign(name, seed=args.seed, jobs=args.jobs)
        (args.out / f"{name}.json").write_text(json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n")
        print(rep.summary())
        all_ok &= rep.ok
    return 0 if all_ok else 3


if __name__ == "__main__":
    sys.exit(main())
