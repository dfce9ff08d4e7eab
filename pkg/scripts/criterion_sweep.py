"""Sweep random quadratic b2 = a2 n^2 + a1 n + a0 and tabulate verdict vs closure.

    python3 scripts/criterion_sweep.py --count 40 --seed 1
"""
import argparse
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from genosc.classify import FINITE, classify
from genosc.liealg import lie_closure
from genosc.recurrence import RecurrenceSpec, validate
from genosc.seqcore import EPSeq, PolyN


@dataclass
class SweepConfig:
    count: int = 40
    seed: int = 0
    max_den: int = 4
    max_dim: int = 24
    max_depth: int = 8
    force_fraction: float = 0.5


def rational(rng, lo, hi, max_den):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def sample(cfg, rng):
    while True:
        a0 = rational(rng, 0, 4, cfg.max_den)
        a2 = rational(rng, 0, 3, cfg.max_den)
        if a0 <= 0:
            continue
        if rng.random() < cfg.force_fraction:
            a1 = a0 + a2
        else:
            a1 = rational(rng, -3, 6, cfg.max_den)
        s = RecurrenceSpec(EPSeq.poly(PolyN((a0, a1, a2))), label=f"({a0}, {a1}, {a2})")
        if validate(s).valid:
            return s, (a0, a1, a2)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=SweepConfig.count)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--max-dim", type=int, default=SweepConfig.max_dim)
    ap.add_argument("--max-depth", type=int, default=SweepConfig.max_depth)
    args = ap.parse_args()
    cfg = SweepConfig(count=args.count, seed=args.seed, max_dim=args.max_dim, max_depth=args.max_depth)
    rng = random.Random(cfg.seed)

    print(f"{'a0':>6} {'a1':>6} {'a2':>6}  {'a1=a0+a2':>8}  {'verdict':<10} {'closure':<15} dim  agree")
    disagreements = 0
    t0 = time.perf_counter()
    for _ in range(cfg.count):
        s, (a0, a1, a2) = sample(cfg, rng)
        v = classify(s)
        res = lie_closure(s, cfg.max_dim, cfg.max_depth)
        agree = (v.kind == FINITE) == (res.closed and res.dim == 4)
        disagreements += not agree
        print(f"{str(a0):>6} {str(a1):>6} {str(a2):>6}  {str(a1 == a0 + a2):>8}  "
              f"{v.kind:<10} {res.status:<15} {res.dim:>3}  {agree}")
    print(f"\n{cfg.count} specs, {disagreements} disagreements, {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
