"""Sweep the main exact sequence over generated instances and tabulate sizes and timings.

usage: python scripts/am_sweep.py [--families line,plane,node,fat] [--count 5] [--seed 0] [--json out.json]
"""
import argparse
import json
import time

from gctor.generate import generate
from gctor.instance import build, format_expr
from gctor.verify import verify_am_sequence


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--families", default="line,plane,node,fat")
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json")
    a = ap.parse_args()
    rows = []
    print(f"{'family':6} {'M':28} {'N':14} {'n':>2} {'pos':>5} {'exact':>6} {'sec':>6}")
    for fam in a.families.split(","):
        for spec in generate(fam, a.count, a.seed):
            inst = build(spec)
            t0 = time.perf_counter()
            rep = verify_am_sequence(inst.modules["M"], inst.modules["N"], inst.ctx, spec.bounds.degrees())
            dt = time.perf_counter() - t0
            m, n = format_expr(spec.modules["M"]), format_expr(spec.modules["N"])
            print(f"{fam:6} {m:28} {n:14} {rep.n:2d} {len(rep.positions):5d} {str(rep.exact):>6} {dt:6.2f}")
            rows.append({"family": fam, "M": m, "N": n, "n": rep.n, "positions": len(rep.positions),
                         "exact": rep.exact, "seconds": round(dt, 3)})
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
