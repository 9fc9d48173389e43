"""Write seeded instance files for one family, ready for `gctor all <file>`.

usage: python scripts/make_instances.py FAMILY COUNT OUTDIR [--seed S] [--command CMD]
"""
import argparse
from pathlib import Path

from gctor.generate import FAMILIES, generate
from gctor.instance import COMMANDS, format_instance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("family", choices=sorted(FAMILIES))
    ap.add_argument("count", type=int)
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--command", default="verify-am", choices=COMMANDS)
    a = ap.parse_args()
    a.outdir.mkdir(parents=True, exist_ok=True)
    for k, spec in enumerate(generate(a.family, a.count, a.seed, a.command)):
        path = a.outdir / f"{a.family}_{a.seed}_{k:03d}.gct"
        path.write_text(format_instance(spec))
        print(path)


if __name__ == "__main__":
    main()
