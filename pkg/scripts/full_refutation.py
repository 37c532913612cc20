"""Long run: try to refute 13-colorability of D(X) (chi(D(X)) >= 14).

Writes the CNF next to the solver log. Either route may take far longer than
the acceptance budget; an interrupted run proves nothing.
"""

import argparse
import time

from dlab.checks import XContext
from dlab.exact import k_colorable

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--method", choices=("bnb", "sat"), default="sat")
    ap.add_argument("--budget", type=int, default=10**9)
    ap.add_argument("--cnf-out", default="dx-13.cnf")
    args = ap.parse_args()
    ctx = XContext.load()
    t0 = time.perf_counter()
    res = k_colorable(ctx.G, 13, budget=args.budget, method=args.method,
                      cnf_out=args.cnf_out if args.method == "sat" else None)
    print(f"{args.method}: {res.verdict.value} nodes={res.nodes} "
          f"seconds={time.perf_counter() - t0:.0f} {res.note}")
