"""Re-run the seeded search and check it reproduces the shipped canonical X."""

import argparse
import sys

from dlab.constructions import DEFAULT_X_PATH, read_pointset, write_pointset
from dlab.xsearch import search_x

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=12)
    ap.add_argument("--budget", type=int, default=200_000)
    ap.add_argument("--write", action="store_true", help="overwrite data/x16.pts")
    args = ap.parse_args()
    cand = search_x(args.seed, args.budget)
    print("\n".join(cand.trace))
    if args.write:
        write_pointset(cand.points, DEFAULT_X_PATH,
                       f"canonical X: dlab search-x --seed {args.seed} --budget {args.budget}")
        sys.exit(0)
    same = read_pointset(DEFAULT_X_PATH) == cand.points
    print("matches shipped X" if same else "DIFFERS from shipped X")
    sys.exit(0 if same else 1)
