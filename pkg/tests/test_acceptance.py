"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) to see the lines without
pytest; under pytest they are collected in the terminal summary.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gctor.complexes import INF, depth, free_resolution, projective_dimension, tor, tor_table
from gctor.generate import generate
from gctor.instance import build, parse_instance
from gctor.modules import GradedModule
from gctor.poly import PolyRing, groebner_basis, normal_form
from gctor.relative_tate import complete_resolution, pc_relative_tor, relative_tor, tate_table
from gctor.ring import quotient_ring
from gctor.semidualizing import (c_injective_artinian, gc_dimension, ic_dimension, in_auslander_class,
                                 in_bass_class, is_totally_C_reflexive)
from gctor.verify import (verify_am_sequence, verify_depth_formula_absolute,
                          verify_depth_formula_relative, verify_duality, verify_independence)

RESULTS: dict = {}
D20 = list(range(-20, 21))
SEED = 20240611


def record(num: int, ok: bool, detail: str):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)
    return ok


def _inst(text: str):
    return build(parse_instance(text))


# ---------------------------------------------------------------- 1


AM_FAMILIES = (("line", 7), ("plane", 7), ("node", 7), ("fat", 5))


def criterion_1():
    t0 = time.perf_counter()
    total, bad, nontrivial = 0, [], 0
    for fam, count in AM_FAMILIES:
        for k, spec in enumerate(generate(fam, count, SEED)):
            inst = build(spec)
            M, N = inst.modules["M"], inst.modules["N"]
            rep = verify_am_sequence(M, N, inst.ctx, D20)
            total += 1
            nontrivial += rep.n > 0
            if not rep.exact:
                bad.append((fam, k, rep.first_failure()))
    dt = time.perf_counter() - t0
    ok = total >= 25 and not bad and dt < 600
    return ok, f"{total} instances ({nontrivial} with n >= 1), {len(bad)} inexact, {dt:.1f}s" + \
        (f"; first: {bad[0]}" if bad else "")


# ---------------------------------------------------------------- 2


def criterion_2():
    A = quotient_ring(["x"], ["x^2"])
    k = GradedModule.residue_field(A)
    tk = tor_table(k, k, range(0, 9), D20)
    tor_ok = all(tk.total(i) == 1 for i in range(0, 9))
    inst = _inst("ring vars=x ideal=x^2\nC = R\nmodule K = k\n")
    cr = complete_resolution(k, inst.ctx, 4)
    tate = tate_table(cr, k, range(-4, 5), D20)
    tate_ok = all(tate.total(i) == 1 for i in range(-4, 5))
    P = quotient_ring(["x", "y"])
    kp = GradedModule.residue_field(P)
    t2 = tor_table(kp, kp, range(0, 4), D20)
    betti = [t2.total(i) for i in range(0, 4)]
    ok = tor_ok and tate_ok and betti == [1, 2, 1, 0]
    return ok, f"Tor(k,k) over x^2: {[tk.total(i) for i in range(9)]}; " \
               f"Tate: {[tate.total(i) for i in range(-4, 5)]}; plane Betti {betti[:3]}"


# ---------------------------------------------------------------- 3


def criterion_3():
    count, bad = 0, []
    for fam, num in AM_FAMILIES + (("dual", 4),):
        for spec in generate(fam, num, SEED + 3):
            inst = build(spec)
            M, N, ctx = inst.modules["M"], inst.modules["N"], inst.ctx
            cr = complete_resolution(M, ctx, 4)
            idx = [i for i in cr.indices() if i > cr.n]
            tate = tate_table(cr, N, idx, D20)
            tr = tor_table(M, N, idx, D20)
            count += 1
            for i in idx:
                if tate.vector(i) != tr.vector(i):
                    bad.append((fam, i))
    return count > 0 and not bad, f"{count} instances, indices n+1..n+4, {len(bad)} mismatches"


# ---------------------------------------------------------------- 4


INDEPENDENCE = [
    ("ring vars=x,y ideal=x*y\nC = R", "k", "k"),
    ("ring vars=x,y ideal=x*y\nC = R", "k", "R/(x)"),
    ("ring vars=x,y ideal=x*y\nC = R", "k(1)", "R/(x+y)"),
    ("ring vars=x,y ideal=x*y\nC = R", "R/(x^2, y^2)", "k"),
    ("ring vars=x,y\nC = R", "sum(A, A)", "k"),
    ("ring vars=x,y\nC = R", "sum(A, A)", "R/(x)"),
    ("ring vars=x\nideal=x^2\nC = R", "sum(A, A)", "k"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "R", "R"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "sum(A, A)", "R"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "R/(x+y)", "free{0,1}"),
    ("ring vars=x ideal=x^2\nC = R", "sum(A, A)", "R/(x)"),
    ("ring vars=x,y ideal=x*y\nC = R", "sum(A, A)", "R/(y)"),
]


def _pair_instance(ring_c: str, m: str, n: str):
    ring_c = ring_c.replace("\nideal=", " ideal=")
    return _inst(f"{ring_c}\nmodule A = k\nmodule M = {m}\nmodule N = {n}\n")


def criterion_4():
    count, bad, trivial = 0, [], 0
    for k, (rc, m, n) in enumerate(INDEPENDENCE):
        inst = _pair_instance(rc, m, n)
        rep = verify_independence(inst.modules["M"], inst.modules["N"], inst.ctx, 4, D20, seed=SEED + k)
        perm = rep.notes[0]
        if perm in ("generator order [0]", "generator order []"):
            trivial += 1
            continue
        count += 1
        if not rep.holds:
            bad.append(k)
    return count >= 10 and not bad, f"{count} instances with a nontrivial reordering, {len(bad)} differ"


# ---------------------------------------------------------------- 5


DUALITY = [
    ("ring vars=x ideal=x^2\nC = R", "k", "k"),
    ("ring vars=x ideal=x^2\nC = R", "k(1)", "k"),
    ("ring vars=x ideal=x^2\nC = R", "R", "k"),
    ("ring vars=x ideal=x^2\nC = R", "sum(A, A)", "k(2)"),
    ("ring vars=x,y ideal=x*y\nC = R", "R/(x)", "k"),
    ("ring vars=x,y ideal=x*y\nC = R", "R/(y)", "R/(x)"),
    ("ring vars=x,y ideal=x*y\nC = R", "R/(x)", "R/(x+y)"),
    ("ring vars=x,y ideal=x*y\nC = R", "syzygy(A, 1)", "k"),
    ("ring vars=x,y ideal=x*y\nC = R", "syzygy(A, 1)", "R/(x^2)"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "k", "R"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "R/(x)", "free{0,1}"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "C", "R"),
]


def criterion_5():
    count, bad = 0, []
    for k, (rc, m, n) in enumerate(DUALITY):
        inst = _pair_instance(rc, m, n)
        M, N, ctx = inst.modules["M"], inst.modules["N"], inst.ctx
        if not is_totally_C_reflexive(M, ctx).member or not in_auslander_class(N, ctx).member:
            bad.append((k, "precondition"))
            continue
        rep = verify_duality(M, N, ctx, 3, D20)
        count += 1
        if not rep.holds:
            bad.append((k, rep.rows))
    return count >= 10 and not bad, f"{count} instances, i = 0..-3, {len(bad)} failures"


# ---------------------------------------------------------------- 6


CUSP = "ring vars=a,b,c weights=3,4,5 ideal=b^2-a*c,a^3-b*c,a^2*b-c^2\nC = canonical\n"


def criterion_6():
    inst = _inst(CUSP + "module N = R\nmodule K = k\nmodule A = R/(a)\nmodule B = R/(b, c)\n")
    ctx, N = inst.ctx, inst.modules["N"]
    if ic_dimension(N, ctx) == INF:
        return False, "R not certified of finite I_C-injective dimension"
    rows, bad = [], []
    for nm in ("K", "A", "B"):
        M = inst.modules[nm]
        n = gc_dimension(M, ctx)
        if n is None or n == INF:
            bad.append((nm, "gcdim"))
            continue
        cr = complete_resolution(M, ctx, 4, n=int(n))
        t = tate_table(cr, N, None, D20)
        rows.append(f"{nm}: n={n}, window {list(cr.window)}")
        if not t.is_zero():
            bad.append((nm, t.to_json()))
    return len(rows) >= 3 and not bad, "; ".join(rows) + (f"; failures {bad}" if bad else "")


# ---------------------------------------------------------------- 7


DEPTH_ABS_FIXED = [
    (CUSP, "k", "R", (0, 0, 1, 1, 0)),
    ("ring vars=x,y\nC = R\n", "k", "k", (2, 0, 0, 2, 0)),
    ("ring vars=x,y\nC = R\n", "k", "R/(x)", (1, 0, 1, 2, 0)),
]


def _depth_generated(fn, need: int, seed: int):
    applicable, bad = 0, []
    for fam in ("line", "plane", "node"):
        for spec in generate(fam, 8, seed):
            inst = build(spec)
            rep = fn(inst.modules["M"], inst.modules["N"], inst.ctx)
            if rep.applicable:
                applicable += 1
                if not rep.holds:
                    bad.append(rep.to_json())
    return applicable, bad


def criterion_7():
    fixed_bad = []
    for rc, m, n, want in DEPTH_ABS_FIXED:
        inst = _inst(rc + f"module M = {m}\nmodule N = {n}\n")
        rep = verify_depth_formula_absolute(inst.modules["M"], inst.modules["N"], inst.ctx)
        got = (rep.q, rep.depth_M, rep.depth_N, rep.depth_R, rep.depth_tor) if rep.applicable else None
        if got != want or not rep.holds:
            fixed_bad.append((m, n, got))
    ab_n, ab_bad = _depth_generated(verify_depth_formula_absolute, 5, SEED + 7)
    rel_fixed = []
    for rc, m, n in [("ring vars=x,y\nC = R\n", "k", "R/(x)"), ("ring vars=x,y\nC = R\n", "R/(x^2)", "R/(y)"),
                     ("ring vars=x,y ideal=x*y\nC = R\n", "R/(x)", "R/(x+y)")]:
        inst = _inst(rc + f"module M = {m}\nmodule N = {n}\n")
        rep = verify_depth_formula_relative(inst.modules["M"], inst.modules["N"], inst.ctx, window=D20)
        if not rep.applicable or not rep.holds:
            rel_fixed.append((m, n, rep.to_json()))
    rel_n, rel_bad = _depth_generated(lambda M, N, c: verify_depth_formula_relative(M, N, c, window=D20),
                                      5, SEED + 17)
    ok = not fixed_bad and not ab_bad and ab_n >= 5 and not rel_fixed and not rel_bad and rel_n >= 5
    return ok, f"absolute: 3 fixed {'ok' if not fixed_bad else fixed_bad}, {ab_n} generated applicable " \
               f"({len(ab_bad)} fail); relative: 3 fixed {'ok' if not rel_fixed else rel_fixed}, " \
               f"{rel_n} generated applicable ({len(rel_bad)} fail)"


# ---------------------------------------------------------------- 8


ARTINIAN = [
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "k"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "R/(x)"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "R/(x+y)"),
    ("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical", "C"),
    ("ring vars=x ideal=x^2\nC = R", "k"),
    ("ring vars=x ideal=x^2\nC = R", "sum(A, A)"),
    ("ring vars=x,y ideal=x^2,y^2\nC = R", "k"),
]


def criterion_8():
    count, bad = 0, []
    for rc, m in ARTINIAN:
        inst = _pair_instance(rc, m, "R")
        ctx = inst.ctx
        J = c_injective_artinian(ctx, (0, 1))
        cr = complete_resolution(inst.modules["M"], ctx, 4)
        t = tate_table(cr, J, None, D20)
        count += 1
        if not t.is_zero():
            bad.append((rc, m, t.to_json()))
    return count >= 5 and not bad, f"{count} complete resolutions, {len(bad)} with homology"


# ---------------------------------------------------------------- 9


def criterion_9():
    rel_count, pc_count, bad = 0, 0, []
    idx = range(0, 4)
    specs = [s for fam, num in AM_FAMILIES for s in generate(fam, num, SEED + 9)]
    for spec in specs:
        inst = build(spec)
        M, N, ctx = inst.modules["M"], inst.modules["N"], inst.ctx
        if in_auslander_class(N, ctx).member:
            r1 = relative_tor(M, N, ctx, idx, D20, "resolution")
            r2 = relative_tor(M, N, ctx, idx, D20, "sequence")
            rel_count += 1
            if r1.table.data != r2.table.data or r2.evaluator != "sequence":
                bad.append(("evaluators", spec.modules))
            if in_bass_class(M, ctx).member:
                pc = pc_relative_tor(M, N, ctx, idx, D20)
                tr = tor_table(M, N, idx, D20)
                pc_count += 1
                if any(pc.vector(i) != tr.vector(i) for i in idx):
                    bad.append(("pc", spec.modules))
    # Bass-class members for a nontrivial C
    inst = _inst("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical\nmodule M = C\nmodule W = sum(M, M)\n"
                 "module N = R\nmodule F = free{0,1}\n")
    for m in ("M", "W"):
        for n in ("N", "F"):
            M, N = inst.modules[m], inst.modules[n]
            if in_bass_class(M, inst.ctx).member and in_auslander_class(N, inst.ctx).member:
                pc = pc_relative_tor(M, N, inst.ctx, idx, D20)
                tr = tor_table(M, N, idx, D20)
                pc_count += 1
                if any(pc.vector(i) != tr.vector(i) for i in idx):
                    bad.append(("pc", m, n))
    ok = rel_count > 0 and pc_count > 0 and not bad
    return ok, f"evaluators compared on {rel_count} instances, P_C-relative vs absolute on {pc_count}, " \
               f"{len(bad)} disagreements"


# ---------------------------------------------------------------- 10


def _random_poly(S, rng, deg, terms=3):
    mons = S.monomials_of_degree(deg)
    pick = rng.sample(mons, min(len(mons), rng.randint(1, terms)))
    return S.lift_terms({m: rng.randrange(1, S.p) for m in pick})


def _random_cyclic(R, rng):
    gens = [_random_poly(R.S, rng, rng.randint(1, 3), 2) for _ in range(rng.randint(1, 3))]
    return GradedModule.cyclic(R, gens)


def _nf_ok(S, rng, gens, G) -> bool:
    f = _random_poly(S, rng, rng.randint(1, 4), 4)
    r = normal_form(f, G)
    lms = G.leading_monomials()
    if any(any(all(a <= b for a, b in zip(lm, m)) for lm in lms) for m in r.terms):
        return False
    if normal_form(r, G) != r or any(not normal_form(g, G).is_zero() for g in gens):
        return False
    h = _random_poly(S, rng, rng.randint(0, 2), 3)
    return normal_form(f + h * gens[0], G) == r


def criterion_10(cases: int = 1000, seed: int = SEED):
    rng = random.Random(seed)
    kinds = ["gb_idempotent", "nf", "d2", "tor_balance", "auslander_buchsbaum"]
    fails = dict.fromkeys(kinds, 0)
    runs = dict.fromkeys(kinds, 0)
    for c in range(cases):
        kind = kinds[c % len(kinds)]
        runs[kind] += 1
        nv = rng.choice([2, 3])
        S = PolyRing(["x", "y", "z"][:nv])
        if kind in ("gb_idempotent", "nf"):
            gens = [_random_poly(S, rng, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
            G = groebner_basis(gens)
            if kind == "gb_idempotent":
                ok = groebner_basis(list(G.generators)).generators == G.generators
            else:
                ok = _nf_ok(S, rng, gens, G)
            fails[kind] += not ok
            continue
        if kind == "auslander_buchsbaum" or rng.random() < 0.5:
            R = quotient_ring(S)
        else:
            R = quotient_ring(S, [_random_poly(S, rng, 2, 2)])
        M = _random_cyclic(R, rng)
        if kind == "d2":
            try:
                free_resolution(M, 3).check()
            except ValueError:
                fails[kind] += 1
        elif kind == "tor_balance":
            N = _random_cyclic(R, rng)
            i = rng.randint(0, 2)
            w = list(range(0, 10))
            fails[kind] += tor(M, N, i, w, "first") != tor(M, N, i, w, "second")
        elif not M.is_zero():
            fails[kind] += projective_dimension(M) + depth(M) != nv
    return sum(fails.values()) == 0, f"{cases} cases, seed {seed}, runs {runs}, failures {fails}"


# ---------------------------------------------------------------- pytest entry points


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    ok, detail = CRITERIA[num]()
    record(num, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    which = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
    status = 0
    for num in which:
        t0 = time.perf_counter()
        ok, detail = CRITERIA[num]()
        record(num, ok, f"{detail} [{time.perf_counter() - t0:.1f}s]")
        status |= not ok
    sys.exit(status)
