"""Seeded instance recipes.

First modules come from cyclic quotients, syzygies, sums and twists; second
modules are drawn only from recipes that lie in A_C by construction (anything
when C = R, free modules when C is the canonical module of an Artinian or
one-dimensional non-Gorenstein ring).
"""
from __future__ import annotations

import random

from .config import Bounds
from .instance import ARITY, InstanceSpec, RingDef, format_instance, parse_instance

FAMILIES = {
    "line": (RingDef(vars=("x",)), ("R",)),
    "plane": (RingDef(vars=("x", "y")), ("R",)),
    "node": (RingDef(vars=("x", "y"), ideal=("x*y",)), ("R",)),
    "fat": (RingDef(vars=("x", "y"), ideal=("x^2", "x*y", "y^2")), ("canonical",)),
    "dual": (RingDef(vars=("x",), ideal=("x^2",)), ("R",)),
    "cusp": (RingDef(vars=("a", "b", "c"), weights=(3, 4, 5),
                     ideal=("b^2-a*c", "a^3-b*c", "a^2*b-c^2")), ("canonical",)),
}


def _first(fam: str, rng: random.Random) -> tuple[list, str]:
    """(helper module lines, expression) for a first argument."""
    a, b = rng.randint(1, 3), rng.randint(1, 3)
    e = rng.choice([0, 0, 1])
    if fam in ("line", "dual"):
        opts = ["k", f"R/(x^{a})", f"k({e})", f"coker{{0,1}}[x^{a}, 0 | 0, x]"]
        if fam == "dual":
            opts = ["k", f"k({e})", "R", "coker{0,0}[x, 0 | 0, x]"]
        return [], rng.choice(opts)
    if fam == "plane":
        opts = ["k", f"R/(x^{a})", f"R/(x^{a}, y^{b})", f"R/(x^{a}*y^{b})", f"R/(x^{a}, x*y, y^{b})",
                f"R/(x^{a}, y)"]
        return [], rng.choice(opts)
    if fam == "node":
        opts = ["k", f"R/(x^{a})", f"R/(y^{b})", f"R/(x^{a}, y^{b})", "R/(x+y)", f"R/(x^{a}+y^{a})",
                f"R/(x^{a}, y^{b}, x+y)"]
        pick = rng.choice(opts + ["sum"])
        if pick == "sum":
            return [f"module A = R/(x^{a})", "module B = k"], "sum(A, B)"
        return [], pick
    if fam == "fat":
        return [], rng.choice(["k", "R/(x)", "R/(y)", "R/(x+y)", "R", "C", "coker{0}[x, y]"])
    if fam == "cusp":
        return [], rng.choice(["k", "R/(a)", "R/(a, b)", "R/(b, c)", "C"])
    raise KeyError(fam)


def _second(fam: str, rng: random.Random) -> str:
    a = rng.randint(1, 3)
    if fam in ("fat", "cusp"):
        return rng.choice(["R", "free{0,1}", "R(1)"])
    if fam in ("line", "dual"):
        return rng.choice(["k", "R", f"R/(x^{a})" if fam == "line" else "k(1)"])
    if fam == "plane":
        return rng.choice(["k", "R", f"R/(x^{a})", f"R/(x, y^{a})", "R/(x+y)"])
    return rng.choice(["k", "R", f"R/(x^{a})", "R/(x)", "R/(x+y)", f"R/(y^{a})"])


def generate(fam: str, count: int, seed: int = 0, command: str = "verify-am",
             bounds: Bounds | None = None) -> list[InstanceSpec]:
    rng = random.Random(f"{fam}:{seed}")
    ring, C = FAMILIES[fam]
    out = []
    for _ in range(count):
        helpers, m = _first(fam, rng)
        n = _second(fam, rng)
        b = bounds or Bounds()
        args = " ".join(["M", "N"][:ARITY.get(command, 2)])
        lines = [format_instance(InstanceSpec(ring, C, bounds=b)).splitlines()[0],
                 "C = " + C[0]] + helpers + [f"module M = {m}", f"module N = {n}",
                                              "bounds " + (f"B={b.B} " if b.B is not None else "")
                                              + f"w={b.w} D={b.D}", f"check {command} {args}"]
        out.append(parse_instance("\n".join(lines)))
    return out
