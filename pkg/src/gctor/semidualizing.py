"""Semidualizing modules and the classes and dimensions indexed by them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complexes import (INF, depth, finite_injective_dimension, free_resolution, hom_complex,
                        hom_dual_matrix, hom_term, homology_at, homology_vanishes,
                        homology_witness, projective_dimension, tensor_left_complex)
from .modules import (GradedMatrix, GradedModule, ModuleMap, direct_sum, evaluation_map,
                      hom_module, homothety, kernel, cokernel, minimal_presentation,
                      natural_map_mu, natural_map_nu, tensor_module, zero_module)
from .ring import GradedRing

MEMBER = "member"
NON_MEMBER = "non-member"
UNDETERMINED = "undetermined"


@dataclass
class ClassMembership:
    verdict: str
    witness: str | None = None
    bound: int | None = None

    @property
    def member(self) -> bool:
        return self.verdict == MEMBER

    def __bool__(self):
        return self.member


def _member(bound, note=None):
    return ClassMembership(MEMBER, note, bound)


def _fail(witness, bound):
    return ClassMembership(NON_MEMBER, witness, bound)


def lowest_nonzero(M: GradedModule) -> tuple:
    """(degree, dim) of the lowest nonzero graded piece of a nonzero module."""
    mm = minimal_presentation(M).module
    d = min(mm.gens)
    return d, mm.hilbert(d)


def map_defect(f: ModuleMap, name: str) -> str | None:
    """Describe why f fails to be bijective, or None if it is an isomorphism."""
    K, _ = kernel(f)
    if not K.is_zero():
        d, n = lowest_nonzero(K)
        return f"{name} not injective: kernel has dim {n} in degree {d}"
    Q, _ = cokernel(f)
    if not Q.is_zero():
        d, n = lowest_nonzero(Q)
        return f"{name} not surjective: cokernel has dim {n} in degree {d}"
    return None


def _first_nonvanishing(X, indices, label):
    """Witness string for the first index with nonzero homology of X, or None."""
    for i, shown in indices:
        w = homology_witness(X, i)
        if w:
            return f"{label}{shown} has dim {w[1]} in degree {w[0]}"
    return None


def ext_vanishing(M: GradedModule, N: GradedModule, lo: int, hi: int, label: str = "Ext"):
    """First witness of Ext^i(M, N) != 0 for lo <= i <= hi, or None."""
    if hi < lo or M.is_zero() or N.is_zero():
        return None
    P = free_resolution(M, hi + 1)
    H = hom_complex(P, N)
    return _first_nonvanishing(H, [(-i, f"^{i}") for i in range(lo, hi + 1)], label)


def tor_vanishing(N: GradedModule, C: GradedModule, lo: int, hi: int, label: str = "Tor"):
    """First witness of Tor_i(N, C) != 0 for lo <= i <= hi (resolving C), or None."""
    if hi < lo or N.is_zero() or C.is_zero():
        return None
    P = free_resolution(C, hi + 1)
    X = tensor_left_complex(N, P)
    return _first_nonvanishing(X, [(i, f"_{i}") for i in range(lo, hi + 1)], label)


def default_bound(R: GradedRing) -> int:
    return int(depth(GradedModule.free(R))) + 6


# ---------------------------------------------------------------- the module C


def is_free_rank_one(C: GradedModule):
    """Twist a with C = R(-a), or None."""
    mm = minimal_presentation(C).module
    if mm.ngens == 1 and mm.pres.ncols == 0:
        return mm.gens[0]
    return None


def is_semidualizing(C: GradedModule, bound: int | None = None) -> ClassMembership:
    if C.is_zero():
        raise ValueError("the zero module is not semidualizing")
    R = C.ring
    B = default_bound(R) if bound is None else bound
    if is_free_rank_one(C) is not None:
        return _member(B, "free of rank one")
    h, _ = homothety(C)
    bad = map_defect(h, "homothety R -> Hom(C,C)")
    if bad:
        return _fail(bad, B)
    w = ext_vanishing(C, C, 1, B, "Ext(C,C)")
    if w:
        return _fail(w, B)
    return _member(B)


@dataclass(frozen=True)
class SemidualizingContext:
    ring: GradedRing
    C: GradedModule
    verified_bound: int
    twist: int | None = None          # a when C = R(-a)
    notes: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return self.twist is not None

    @property
    def depth_ring(self) -> int:
        return int(depth(GradedModule.free(self.ring)))


def make_context(C: GradedModule, bound: int | None = None, notes=()) -> SemidualizingContext:
    """Verify C and freeze it into a context (raises if C is not semidualizing)."""
    R = C.ring
    B = default_bound(R) if bound is None else bound
    v = is_semidualizing(C, B)
    if not v.member:
        raise ValueError(f"C is not semidualizing: {v.witness}")
    Cm = minimal_presentation(C).module
    a = is_free_rank_one(Cm)
    notes = tuple(notes)
    if a is not None:
        notes += (f"C is free of rank one (R({-a}))",)
    return SemidualizingContext(R, Cm, B, a, notes)


def trivial_context(R: GradedRing, bound: int | None = None) -> SemidualizingContext:
    B = default_bound(R) if bound is None else bound
    return SemidualizingContext(R, GradedModule.free(R), B, 0, ("C = R",))


# ---------------------------------------------------------------- canonical module


def change_ring(mat: GradedMatrix, R: GradedRing) -> GradedMatrix:
    """The same matrix with entries reduced into R (same polynomial ring)."""
    cols = [{i: R.nf_terms(t) for i, t in c.items()} for c in mat.cols]
    return GradedMatrix(R, mat.source, mat.target, cols, check=False)


def canonical_module(R: GradedRing, bound: int | None = None) -> GradedModule:
    """Ext^c_S(R, S(-sum of weights)) for R = S/I of codimension c, as an R-module."""
    S = GradedRing(R.S, ())
    c = R.nvars - R.krull_dim()
    if R.gb is None:
        return GradedModule.free(R, (sum(R.weights),))
    gens = [S.reduce(g) for g in R.gb.generators]
    RS = GradedModule(GradedMatrix.from_polys(S, [g.degree() for g in gens], (0,), [gens]))
    P = free_resolution(RS, c + 1)
    E = homology_at(hom_complex(P, GradedModule.free(S)), -c)
    E = minimal_presentation(E).module
    shift = sum(R.weights)
    pres = change_ring(E.pres.shift(shift), R)
    omega = minimal_presentation(GradedModule(pres, "omega")).module
    v = is_semidualizing(omega, bound)
    if not v.member:
        raise ValueError(f"ring not CM or twist wrong ({v.witness})")
    return omega


def matlis_dual_of_ring(R: GradedRing) -> GradedModule:
    """E = Hom_k(R, k) for Artinian R, on the dual basis e_m (deg e_m = -deg m)."""
    if not R.is_artinian():
        raise ValueError("Hom_k(R, k) is finitely generated only over Artinian rings")
    top = R.top_degree()
    mons = [(d, m) for d in range(top + 1) for m in R.basis(d)]
    pos = {m: i for i, (_, m) in enumerate(mons)}
    gens = [-d for d, _ in mons]
    one = R.S.one_mono
    p = R.p
    src, cols = [], []
    for v in range(R.nvars):
        xv = tuple(1 if k == v else 0 for k in range(R.nvars))
        wv = R.weights[v]
        for d, m in mons:
            # x e_m = sum_{m'} coeff_m(NF(x m')) e_{m'}
            col = {pos[m]: {xv: 1}}
            for m2 in R.basis(d - wv):
                mm = tuple(a + b for a, b in zip(xv, m2))
                cf = R.nf_mono(mm).get(m, 0)
                if cf:
                    col[pos[m2]] = {one: (-cf) % p}
            src.append(-d + wv)
            cols.append(col)
    E = GradedModule(GradedMatrix(R, src, gens, cols, check=False), "E")
    return minimal_presentation(E).module


# ---------------------------------------------------------------- transpose and reflexivity


def transpose(M: GradedModule, ctx: SemidualizingContext, check_window: Sequence[int] | None = None
              ) -> GradedModule:
    """Tr_C M = coker(Hom(P0, C) -> Hom(P1, C)) for a minimal presentation P1 -> P0."""
    C = ctx.C
    R = ctx.ring
    Mm = minimal_presentation(M).module
    f = Mm.pres
    P0d = hom_term(f.target, C)
    P1d = hom_term(f.source, C)
    fd = hom_dual_matrix(f, C)
    if P1d.ngens == 0:
        Tr = zero_module(R)
    else:
        rel = GradedMatrix(R, tuple(P1d.pres.source) + tuple(fd.source), P1d.gens,
                           list(P1d.pres.cols) + list(fd.cols), check=False)
        Tr = minimal_presentation(GradedModule(rel, "Tr")).module
    if check_window is not None:
        Md = hom_module(Mm, C).module
        for d in check_window:
            alt = Md.hilbert(d) - P0d.hilbert(d) + P1d.hilbert(d) - Tr.hilbert(d)
            if alt:
                raise AssertionError(f"four-term sequence not exact in degree {d}")
    return Tr


def dual(M: GradedModule, ctx: SemidualizingContext) -> GradedModule:
    """M^dagger = Hom(M, C)."""
    return minimal_presentation(hom_module(M, ctx.C).module).module


def is_totally_C_reflexive(M: GradedModule, ctx: SemidualizingContext, bound: int | None = None
                           ) -> ClassMembership:
    B = ctx.verified_bound if bound is None else bound
    if M.is_zero():
        return _member(B, "zero module")
    C = ctx.C
    ev, D, _ = evaluation_map(M, C)
    bad = map_defect(ev, "evaluation M -> M^{dagger dagger}")
    if bad:
        return _fail(bad, B)
    w = ext_vanishing(M, C, 1, B, "Ext(M,C)")
    if w:
        return _fail(w, B)
    w = ext_vanishing(minimal_presentation(D.module).module, C, 1, B, "Ext(M^dagger,C)")
    if w:
        return _fail(w, B)
    return _member(B)


# ---------------------------------------------------------------- Foxby classes


def in_auslander_class(N: GradedModule, ctx: SemidualizingContext, bound: int | None = None
                       ) -> ClassMembership:
    B = ctx.verified_bound if bound is None else bound
    if ctx.is_trivial or N.is_zero():
        return _member(B, "C = R" if ctx.is_trivial else "zero module")
    C = ctx.C
    mu, _ = natural_map_mu(N, C)
    bad = map_defect(mu, "mu_N: N -> Hom(C, N (x) C)")
    if bad:
        return _fail(bad, B)
    w = tor_vanishing(N, C, 1, B, "Tor(N,C)")
    if w:
        return _fail(w, B)
    NC = minimal_presentation(tensor_module(N, C)).module
    w = ext_vanishing(C, NC, 1, B, "Ext(C,N(x)C)")
    if w:
        return _fail(w, B)
    return _member(B)


def in_bass_class(M: GradedModule, ctx: SemidualizingContext, bound: int | None = None
                  ) -> ClassMembership:
    B = ctx.verified_bound if bound is None else bound
    if ctx.is_trivial or M.is_zero():
        return _member(B, "C = R" if ctx.is_trivial else "zero module")
    C = ctx.C
    nu, H = natural_map_nu(M, C)
    bad = map_defect(nu, "nu_M: C (x) Hom(C, M) -> M")
    if bad:
        return _fail(bad, B)
    w = ext_vanishing(C, M, 1, B, "Ext(C,M)")
    if w:
        return _fail(w, B)
    HM = minimal_presentation(H.module).module
    w = tor_vanishing(HM, C, 1, B, "Tor(Hom(C,M),C)")
    if w:
        return _fail(w, B)
    return _member(B)


# ---------------------------------------------------------------- dimensions


def gc_dimension(M: GradedModule, ctx: SemidualizingContext, bound: int | None = None):
    """G_C-dimension: an int, math.inf, -math.inf (zero module) or None (undetermined)."""
    if M.is_zero():
        return -INF
    C = ctx.C
    dR = ctx.depth_ring
    n = 0
    if dR >= 1:
        P = free_resolution(M, dR + 1)
        H = hom_complex(P, C)
        for i in range(1, dR + 1):
            if not homology_vanishes(H, -i):
                n = i
    P = free_resolution(M, n + 1)
    syz = minimal_presentation(P.syzygy_module(n)).module
    v = is_totally_C_reflexive(syz, ctx, bound)
    if v.verdict == NON_MEMBER:
        return INF
    if v.verdict == UNDETERMINED:
        return None
    if n != dR - depth(M):
        raise AssertionError(f"G_C-dim {n} differs from depth R - depth M = {dR - depth(M)}")
    return n


def syzygy_module(M: GradedModule, n: int) -> GradedModule:
    P = free_resolution(M, n + 1)
    return minimal_presentation(P.syzygy_module(n)).module


def pc_dimension(M: GradedModule, ctx: SemidualizingContext):
    """pd of Hom(C, M)."""
    if M.is_zero():
        return -INF
    H = hom_module(ctx.C, M).module
    return projective_dimension(H)


def ic_dimension(M: GradedModule, ctx: SemidualizingContext):
    """depth R when M (x) C has finite injective dimension, else infinity."""
    if M.is_zero():
        return -INF
    MC = minimal_presentation(tensor_module(M, ctx.C)).module
    if MC.is_zero():
        return -INF
    return ctx.depth_ring if finite_injective_dimension(MC) else INF


def c_projective(ctx: SemidualizingContext, twists: Sequence[int] = (0,)) -> GradedModule:
    """P (x) C for P = sum R(-a)."""
    if not twists:
        return zero_module(ctx.ring)
    return direct_sum([ctx.C.twist(-a) for a in twists])


def c_injective_artinian(ctx: SemidualizingContext, twists: Sequence[int] = (0,)) -> GradedModule:
    """Hom(C, I) for I = sum E(a), E = Hom_k(R, k) the injective hull of k."""
    E = matlis_dual_of_ring(ctx.ring)
    I = direct_sum([E.twist(a) for a in twists])
    return minimal_presentation(hom_module(ctx.C, I).module).module
