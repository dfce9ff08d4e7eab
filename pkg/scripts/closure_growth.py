"""Print Lie-closure growth logs (depth, dim) for a few b2 sequences.

    python3 scripts/closure_growth.py --max-dim 60 --max-depth 6
    python3 scripts/closure_growth.py --b2 "n^3 + 1" --b2 "(n+1)*(n+2)"
"""
import argparse
import time

from genosc.classify import classify
from genosc.expr import parse_coeff_expr
from genosc.liealg import lie_closure
from genosc.recurrence import RecurrenceSpec, laguerre
from genosc.seqcore import EPSeq

DEFAULTS = ["1", "n + 2", "n + 1", "(n+1)^2", "n^2 + 1", "n^3 + 1"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--b2", action="append", help="b2 expression in n (repeatable)")
    ap.add_argument("--max-dim", type=int, default=40)
    ap.add_argument("--max-depth", type=int, default=6)
    ap.add_argument("--degree-cap", type=int, default=16)
    args = ap.parse_args()

    specs = [RecurrenceSpec(EPSeq.poly(parse_coeff_expr(e)), label=f"b2 = {e}") for e in args.b2 or DEFAULTS]
    if not args.b2:
        specs.append(laguerre(3))
    for s in specs:
        t0 = time.perf_counter()
        res = lie_closure(s, args.max_dim, args.max_depth, args.degree_cap)
        dt = time.perf_counter() - t0
        log = " ".join(f"{d}:{k}" for d, k in res.growth_log)
        print(f"{s.label:<28} {classify(s).kind:<10} {res.status:<15} dim={res.dim:<3} [{log}] {dt:.2f}s")
        if res.note:
            print(f"{'':<28} {res.note}")


if __name__ == "__main__":
    main()
