"""Command line entry point: gctor <command> <spec-file> [options]."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .complexes import INF, tor_table
from .config import Bounds
from .instance import COMMANDS, Instance, InstanceError, build, parse_instance
from .relative_tate import UndeterminedDimension, pc_relative_tor, relative_tor, tate_tor
from .semidualizing import gc_dimension, in_auslander_class
from .verify import (SCHEMA_VERSION, PreconditionError, verify_am_sequence, verify_depth_formula_absolute,
                     verify_depth_formula_relative, verify_duality, verify_independence)

log = logging.getLogger("gctor")


def _dim(x):
    if x is None:
        return None
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return int(x)


def _fmt_table(name: str, table) -> list:
    lines = [f"  {name}:"]
    for i, v in sorted(table.data.items()):
        body = " ".join(f"{d}:{n}" for d, n in sorted(v.items())) or "0"
        lines.append(f"    [{i}] {body}")
    return lines


def run_check(inst: Instance, cmd: str, args: tuple, bounds: Bounds) -> tuple[bool, dict, list]:
    """(passed, json report, text lines) for one check."""
    ctx = inst.ctx
    mods = [inst.modules[a] for a in args]
    degs = bounds.degrees()
    B = bounds.B
    if cmd == "verify-am":
        rep = verify_am_sequence(mods[0], mods[1], ctx, degs, B, keep_maps=True)
        lines = [f"  n = {rep.n}, {len(rep.positions)} positions checked: {rep.verdict}"]
        if rep.n:
            lines += _fmt_table("Tate", rep.tate) + _fmt_table("Tor", rep.tor) + _fmt_table("relative", rep.relative)
        bad = rep.first_failure()
        if bad:
            lines.append(f"  first failure: {bad}")
        return rep.exact, rep.to_json(with_maps=True), lines
    if cmd in ("depth-absolute", "depth-relative"):
        f = verify_depth_formula_absolute if cmd == "depth-absolute" else verify_depth_formula_relative
        rep = f(mods[0], mods[1], ctx, B) if cmd == "depth-absolute" else f(mods[0], mods[1], ctx, B, bounds.w, degs)
        j = rep.to_json()
        line = f"  {rep.verdict}"
        if rep.applicable:
            line += f": q = {rep.q}, {j['depth_M']} + {j['depth_N']} vs {j['depth_R']} + {j['depth_tor_q']} - {rep.q}"
        return rep.holds is not False, j, [line]
    if cmd == "duality":
        rep = verify_duality(mods[0], mods[1], ctx, min(bounds.w, 3), degs, B)
        return rep.holds, rep.to_json(), [f"  Tate vs Ext of the transpose: {'equal' if rep.holds else 'different'}"]
    if cmd == "independence":
        rep = verify_independence(mods[0], mods[1], ctx, bounds.w, degs, seed=bounds.seed)
        return rep.holds, rep.to_json(), [f"  two complete resolutions: {'same' if rep.holds else 'different'} tables"]
    if cmd == "gcdim":
        n = gc_dimension(mods[0], ctx, B)
        return n is not None, {"schema": SCHEMA_VERSION, "gc_dim": _dim(n), "bound": ctx.verified_bound}, \
            [f"  G_C-dim = {_dim(n) if n is not None else 'undetermined'}"]
    if cmd == "tor":
        t = tor_table(mods[0], mods[1], range(0, bounds.w + 1), degs)
        return True, {"schema": SCHEMA_VERSION, "tor": t.to_json()}, _fmt_table("Tor", t)
    if cmd == "tate":
        t = tate_tor(mods[0], mods[1], ctx, bounds.w, degs, bound=B)
        return True, {"schema": SCHEMA_VERSION, "n": t.n, "window": list(t.window),
                      "tate": t.table.to_json()}, [f"  n = {t.n}, window {list(t.window)}"] + _fmt_table("Tate", t.table)
    if cmd == "reltor":
        idx = range(0, bounds.w + 1)
        r1 = relative_tor(mods[0], mods[1], ctx, idx, degs, "resolution")
        out = {"schema": SCHEMA_VERSION, "resolution": r1.table.to_json()}
        ok = True
        if in_auslander_class(mods[1], ctx, B).member:
            r2 = relative_tor(mods[0], mods[1], ctx, idx, degs, "sequence")
            out["sequence"] = r2.table.to_json()
            ok = r1.table.data == r2.table.data
        out["pc_relative"] = pc_relative_tor(mods[0], mods[1], ctx, idx, degs).to_json()
        out["evaluators_agree"] = ok
        return ok, out, _fmt_table("relative Tor", r1.table) + [f"  evaluators agree: {ok}"]
    raise InstanceError(f"unknown command {cmd!r}")


def run(spec, command: str | None = None, bounds: Bounds | None = None) -> tuple[bool, dict, list]:
    """Run the checks of ``spec`` (only those matching ``command`` when given)."""
    bounds = bounds or spec.bounds
    inst = build(spec)
    checks = [c for c in spec.checks if command is None or c[0] == command]
    if command is not None and not checks:
        raise InstanceError(f"no 'check {command}' statement in the instance")
    reports, lines, all_ok = [], [], True
    for cmd, args in checks:
        t0 = time.perf_counter()
        try:
            ok, rep, text = run_check(inst, cmd, args, bounds)
        except (PreconditionError, UndeterminedDimension, ValueError) as e:
            ok, rep, text = False, {"error": str(e)}, [f"  error: {e}"]
        dt = time.perf_counter() - t0
        all_ok &= ok
        reports.append({"command": cmd, "args": list(args), "pass": ok, "seconds": round(dt, 3), "report": rep})
        lines.append(f"{cmd} {' '.join(args)}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s)")
        lines.extend(text)
    notes = list(inst.ctx.notes)
    return all_ok, {"schema": SCHEMA_VERSION, "bounds": bounds.to_json(), "context_notes": notes,
                    "checks": reports, "pass": all_ok}, lines


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="gctor", description=__doc__)
    ap.add_argument("command", choices=COMMANDS + ("all",))
    ap.add_argument("spec", help="instance file")
    ap.add_argument("--bound", type=int, help="vanishing bound B")
    ap.add_argument("--window", type=int, help="Tate window radius w")
    ap.add_argument("--hilbert-window", type=int, help="degrees -D..D")
    ap.add_argument("--json", help="write the full report here")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-v", "--verbose", action="store_true")
    a = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(message)s")
    try:
        with open(a.spec, encoding="utf-8") as fh:
            spec = parse_instance(fh.read())
        b = spec.bounds
        bounds = Bounds(a.bound if a.bound is not None else b.B,
                        a.window if a.window is not None else b.w,
                        a.hilbert_window if a.hilbert_window is not None else b.D, a.seed)
        ok, report, lines = run(spec, None if a.command == "all" else a.command, bounds)
    except (InstanceError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    for note in report["context_notes"]:
        print(f"note: {note}")
    if a.json:
        with open(a.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
