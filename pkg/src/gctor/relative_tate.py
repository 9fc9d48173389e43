"""G_C-approximations, proper resolutions, relative Tor and Tate Tor."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .complexes import (INF, ChainComplex, HomologyTable, HomView, ModuleComplexView, Resolution,
                        default_window, free_resolution, hom_dual_matrix, hom_term,
                        homology_dim, homology_table, homology_vanishes, homology_witness,
                        tensor_complex, tor_table)
from .les import SequenceReport, les_report
from .modules import (Constraint, GradedMatrix, GradedModule, ModuleMap,
                      cokernel, direct_sum, find_map, hom_module, homology_module, hstack,
                      in_submodule, kernel, kron_identity_left, kron_identity_right, lift_through,
                      minimal_presentation, natural_map_nu, pushout, tensor_module, vstack,
                      zero_module)
from .semidualizing import (ClassMembership, SemidualizingContext, gc_dimension,
                            in_auslander_class, is_totally_C_reflexive, pc_dimension)


class UndeterminedDimension(ValueError):
    pass


def _one(R):
    return R.S.one_mono


def minimized(M: GradedModule):
    """Minimal presentation of M with comparison lifts (to_new: M -> min, to_old: min -> M)."""
    pr = minimal_presentation(M)
    return pr.module, pr.to_new, pr.to_old


def certify_short_exact(f: ModuleMap, g: ModuleMap) -> str | None:
    """None when 0 -> A -f-> B -g-> C -> 0 is exact, else the failing condition."""
    if f.source.ngens and not in_submodule(g.lift @ f.lift, g.target.pres):
        return "composite is not zero"
    if not kernel(f)[0].is_zero():
        return "first map not injective"
    if not cokernel(g)[0].is_zero():
        return "second map not surjective"
    if not homology_module(g, f).is_zero():
        return "not exact in the middle"
    return None


def _require_dim(M, ctx, n):
    if n is None:
        n = gc_dimension(M, ctx)
    if n is None or n == INF:
        raise UndeterminedDimension(f"G_C-dimension is {'undetermined' if n is None else 'infinite'}")
    return max(int(n), 0) if n != -INF else 0


# ---------------------------------------------------------------- approximations


@dataclass
class GCApproximation:
    """0 -> Y -iota-> X -pi-> M -> 0 with X totally C-reflexive and Y of finite P_C-dimension."""
    Y: GradedModule
    X: GradedModule
    M: GradedModule
    iota: ModuleMap
    pi: ModuleMap
    n: int
    x_verdict: ClassMembership | None = None
    y_pc_dim: float | None = None

    def certify(self, ctx: SemidualizingContext, bound: int | None = None):
        bad = certify_short_exact(self.iota, self.pi)
        if bad:
            raise AssertionError(f"approximation sequence: {bad}")
        self.x_verdict = is_totally_C_reflexive(self.X, ctx, bound)
        self.y_pc_dim = pc_dimension(self.Y, ctx)
        if not self.x_verdict.member:
            raise AssertionError(f"middle term not totally C-reflexive: {self.x_verdict.witness}")
        if self.y_pc_dim == INF:
            raise AssertionError("kernel has infinite P_C-dimension")
        if self.n >= 1 and not self.y_pc_dim < self.n:
            raise AssertionError(f"P_C-dim of kernel {self.y_pc_dim} is not below {self.n}")
        return self


def dual_embedding(X: GradedModule, ctx: SemidualizingContext):
    """j: X -> W = sum_l C(e_l), one summand per generator psi_l of Hom(X, C).

    For totally C-reflexive X the map is injective with totally C-reflexive cokernel.
    Returns (W, j, D) where D is the HomModule Hom(X, C).
    """
    R, C = ctx.ring, ctx.C
    D = hom_module(X, C)
    es = D.module.gens
    if not es:
        W = zero_module(R)
        return W, ModuleMap.zero(X, W), D
    W = direct_sum([C.twist(e) for e in es])
    nC = C.ngens
    cols = []
    for i in range(X.ngens):
        col = {}
        for l in range(len(es)):
            for k, t in D.gen_maps[l].cols[i].items():
                col[l * nC + k] = t
        cols.append(col)
    j = ModuleMap(X, W, GradedMatrix(R, X.gens, W.gens, cols, check=False), check=False)
    return W, j, D


def _transport(f: ModuleMap, src_new=None, tgt_new=None) -> ModuleMap:
    """Re-express f after changing the presentation of its source and/or target."""
    lift = f.lift
    S, T = f.source, f.target
    if src_new is not None:
        S, _, to_old = src_new
        lift = lift @ to_old
    if tgt_new is not None:
        T, to_new, _ = tgt_new
        lift = to_new @ lift
    return ModuleMap(S, T, lift, check=False)


def gc_approximation(M: GradedModule, ctx: SemidualizingContext, n: int | None = None,
                     certify: bool = True, progress: Callable | None = None) -> GCApproximation:
    """Approximation by induction on n = G_C-dim M (pushout along the dual embedding)."""
    R = ctx.ring
    n = _require_dim(M, ctx, n)
    Mm, _, _ = minimized(M)
    if progress:
        progress("approximation", n, None)
    if n == 0:
        Z = zero_module(R)
        out = GCApproximation(Z, Mm, Mm, ModuleMap.zero(Z, Mm), ModuleMap.identity(Mm), 0)
        return out.certify(ctx) if certify else out
    P = free_resolution(Mm, 2)
    F = GradedModule.free(R, Mm.gens)
    d1 = P.diff(1)
    Om = P.syzygy_module(1)
    inc = ModuleMap(Om, F, d1, check=False)                    # Omega M -> F
    sub = gc_approximation(Om, ctx, n - 1, certify=False, progress=progress)
    # sub: 0 -> Y' -> X' -> Omega M' -> 0 where Omega M' is a minimal copy of Om
    Omin, to_new, to_old = minimized(Om)
    if sub.M.pres != Omin.pres:
        raise AssertionError("recursive approximation changed the module")
    Xp = sub.X
    W, j, _ = dual_embedding(Xp, ctx)
    comp = ModuleMap(Xp, F, inc.lift @ to_old @ sub.pi.lift, check=False)   # X' -> Omega M -> F
    Dpo, F_to_D, W_to_D = pushout(comp, j)
    eps = GradedMatrix.identity(R, Mm.gens)
    to_M = ModuleMap(Dpo, Mm, hstack([eps, GradedMatrix.zero(R, W.gens, Mm.gens)], Mm.gens), check=False)
    # V = W / j(Y')
    jy = j.lift @ sub.iota.lift
    Vrel = hstack([W.pres, jy], W.gens) if jy.ncols else W.pres
    V = GradedModule(Vrel)
    V_to_D = ModuleMap(V, Dpo, W_to_D.lift, check=False)
    Dmin = minimized(Dpo)
    Vmin = minimized(V)
    iota = _transport(_transport(V_to_D, src_new=Vmin), tgt_new=Dmin)
    pi = _transport(to_M, src_new=Dmin)
    out = GCApproximation(Vmin[0], Dmin[0], Mm, iota, pi, n)
    return out.certify(ctx) if certify else out


@dataclass
class GCHull:
    """0 -> M -> Y' -> X' -> 0 with Y' of finite P_C-dimension and X' totally C-reflexive."""
    M: GradedModule
    Y: GradedModule
    X: GradedModule
    into: ModuleMap
    onto: ModuleMap
    n: int
    y_pc_dim: float | None = None
    x_verdict: ClassMembership | None = None


def gc_hull(M: GradedModule, ctx: SemidualizingContext, n: int | None = None,
            approx: GCApproximation | None = None, certify: bool = True) -> GCHull:
    R = ctx.ring
    if approx is None:
        approx = gc_approximation(M, ctx, n, certify=certify)
    D, Mm = approx.X, approx.M
    W, j, _ = dual_embedding(D, ctx)
    Q, W_to_Q, M_to_Q = pushout(j, approx.pi)
    Dpp, proj = cokernel(j)
    onto = ModuleMap(Q, Dpp, hstack([proj.lift, GradedMatrix.zero(R, Mm.gens, Dpp.gens)], Dpp.gens),
                     check=False)
    Qm = minimized(Q)
    into = _transport(M_to_Q, tgt_new=Qm)
    onto = _transport(onto, src_new=Qm)
    hull = GCHull(Mm, Qm[0], Dpp, into, onto, approx.n)
    if certify:
        bad = certify_short_exact(into, onto)
        if bad:
            raise AssertionError(f"hull sequence: {bad}")
        hull.x_verdict = is_totally_C_reflexive(Dpp, ctx)
        hull.y_pc_dim = pc_dimension(hull.Y, ctx)
        if not hull.x_verdict.member or hull.y_pc_dim == INF:
            raise AssertionError("hull terms fail their certificates")
    return hull


# ---------------------------------------------------------------- proper resolutions


def c_projective_resolution(Y: GradedModule, ctx: SemidualizingContext, length: int):
    """C (x) Q -> Y for a free resolution Q of Hom(C, Y) (exact when Y is in B_C).

    Returns (complex with indices 0..length, augmentation lift F0(C (x) Q_0) -> F0(Y)).
    """
    R, C = ctx.ring, ctx.C
    nu, H = natural_map_nu(Y, C)
    Q = free_resolution(H.module, length + 1)
    objs = {j: tensor_module(C, GradedModule.free(R, Q.obj(j).gens)) for j in range(length + 1)
            if Q.obj(j).ngens}
    diffs = {j: kron_identity_left(C.gens, Q.diff(j)) for j in range(1, length + 1)
             if j in objs and j - 1 in objs}
    aug = nu.lift @ kron_identity_left(C.gens, Q.to_orig) if objs else None
    return ChainComplex(R, objs, diffs, check=False), aug


def proper_resolution_parts(approx: GCApproximation, ctx: SemidualizingContext, length: int):
    """(X, CQ, aug): the proper resolution together with its C-projective tail CQ -> Y."""
    R = ctx.ring
    objs = {0: approx.X}
    diffs = {}
    CQ, aug = None, None
    if approx.Y.ngens:
        CQ, aug = c_projective_resolution(approx.Y, ctx, max(length - 1, 0))
        for j, m in CQ.objects.items():
            objs[j + 1] = m
        for j, dj in CQ.diffs.items():
            diffs[j + 1] = dj
        if 0 in CQ.objects:
            diffs[1] = approx.iota.lift @ aug
    return ChainComplex(R, objs, diffs, check=False), CQ, aug


def proper_gc_resolution(M: GradedModule, ctx: SemidualizingContext, length: int | None = None,
                         approx: GCApproximation | None = None) -> tuple:
    """X_0 = approximation middle term, X_{j+1} = C (x) Q_j; returns (complex, augmentation X_0 -> M)."""
    if approx is None:
        approx = gc_approximation(M, ctx)
    length = approx.n if length is None else length
    if length < approx.n:
        raise ValueError("length must be at least the G_C-dimension")
    X, _, _ = proper_resolution_parts(approx, ctx, length)
    return X, approx.pi


def properness_check(X: ChainComplex, aug: ModuleMap, panel: Sequence[GradedModule]) -> list:
    """Indices where Hom(A, X) -> Hom(A, M) -> 0 fails to be exact, for A in the panel."""
    R = X.ring
    M = aug.target
    bad = []
    for a_idx, A in enumerate(panel):
        homs = {}
        for i in range(X.lo, X.hi + 1):
            homs[i] = hom_module(A, X.obj(i))
        homs[-1] = hom_module(A, M)
        objs = {i: h.module for i, h in homs.items()}
        diffs = {}
        for i in list(range(X.lo + 1, X.hi + 1)) + [0]:
            src, tgt = homs[i], homs[i - 1]
            mp = X.diff(i) if i > 0 else aug.lift
            cols = []
            for l, e in enumerate(src.module.gens):
                v = tgt.coordinates(mp @ src.gen_maps[l], e)
                if v is None:
                    raise AssertionError("composite homomorphism not expressible")
                cols.append(v.cols[0])
            diffs[i] = GradedMatrix(R, src.module.gens, tgt.module.gens, cols, check=False)
        HX = ChainComplex(R, objs, diffs, check=False)
        for i in range(-1, X.hi + 1):
            if not homology_vanishes(HX, i):
                bad.append((a_idx, i))
    return bad


# ---------------------------------------------------------------- relative Tor


@dataclass
class RelativeTorTable:
    table: HomologyTable
    evaluator: str
    notes: list = field(default_factory=list)


def relative_tor_resolution(M, N, ctx, indices, window=None, approx=None) -> HomologyTable:
    """Evaluator 1: homology of (proper G_C-resolution) (x) N."""
    window = default_window() if window is None else window
    indices = list(indices)
    X, _ = proper_gc_resolution(M, ctx, max(max(indices) + 1, 1) if approx is None else
                                max(max(indices) + 1, approx.n), approx)
    return homology_table(ModuleComplexView(tensor_complex(X, N)), indices, window)


def relative_tor_sequence(M, N, ctx, indices, window=None, approx=None) -> HomologyTable:
    """Evaluator 2 (N in A_C): M (x) N, ker(Y (x) N -> X (x) N), then Tor_{i-1}(Y, N)."""
    window = default_window() if window is None else window
    R = ctx.ring
    if approx is None:
        approx = gc_approximation(M, ctx)
    out = {}
    high = [i for i in indices if i >= 2]
    if high and approx.Y.ngens:
        tt = tor_table(approx.Y, N, [i - 1 for i in high], window)
    for i in indices:
        if i == 0:
            MN = tensor_module(approx.M, N)
            out[0] = {d: h for d in window if (h := MN.hilbert(d))}
        elif i == 1:
            if approx.Y.ngens == 0:
                out[1] = {}
                continue
            YN = tensor_module(approx.Y, N)
            XN = tensor_module(approx.X, N)
            two = ChainComplex(R, {1: YN, 0: XN}, {1: kron_identity_right(approx.iota.lift, N.gens)},
                               check=False)
            out[1] = homology_table(ModuleComplexView(two), [1], window).vector(1)
        elif i < 0:
            out[i] = {}
        else:
            out[i] = tt.vector(i - 1) if approx.Y.ngens else {}
    return HomologyTable(out)


def relative_tor(M, N, ctx, indices, window=None, evaluator: str = "resolution", approx=None,
                 bound=None) -> RelativeTorTable:
    notes = []
    if evaluator == "sequence":
        v = in_auslander_class(N, ctx, bound)
        if not v.member:
            notes.append(f"second argument not certified in A_C ({v.witness}); used the resolution evaluator")
            evaluator = "resolution"
    if evaluator == "sequence":
        return RelativeTorTable(relative_tor_sequence(M, N, ctx, indices, window, approx), evaluator, notes)
    return RelativeTorTable(relative_tor_resolution(M, N, ctx, indices, window, approx), "resolution", notes)


def pc_relative_tor(M, N, ctx, indices, window=None) -> HomologyTable:
    """Tor_i(Hom(C, M), N (x) C)."""
    H = minimal_presentation(hom_module(ctx.C, M).module).module
    NC = minimal_presentation(tensor_module(N, ctx.C)).module
    if H.ngens == 0 or NC.ngens == 0:
        return HomologyTable({i: {} for i in indices})
    return tor_table(H, NC, indices, window)


def lift_chain_map(src: ChainComplex, tgt: ChainComplex, F0: GradedMatrix, top: int) -> dict:
    """F_i: src_i -> tgt_i for 0 <= i <= top with tgt.d F_i = F_{i-1} src.d (tgt exact above 0)."""
    F = {0: F0}
    R = src.ring
    for i in range(1, top + 1):
        if src.obj(i).ngens == 0:
            break
        if tgt.obj(i).ngens == 0:
            rhs = F[i - 1] @ src.diff(i)
            if not in_submodule(rhs, tgt.obj(i - 1).pres):
                raise AssertionError(f"comparison map does not lift at {i}")
            F[i] = GradedMatrix.zero(R, src.obj(i).gens, ())
            continue
        Fi = lift_through(tgt.diff(i), F[i - 1] @ src.diff(i), tgt.obj(i - 1).pres)
        if Fi is None:
            raise AssertionError(f"comparison map does not lift at {i}")
        F[i] = Fi
    return F


@dataclass
class ClassicalHorseshoe:
    """Free resolution P of the middle term with 0 -> P' -> P -> P'' -> 0 split in each degree."""
    P: ChainComplex
    sub: Resolution
    quo: Resolution
    aug: GradedMatrix
    inc: dict
    proj: dict


def _split_maps(R, A, B, S):
    one = _one(R)
    na = len(A)
    inc = GradedMatrix(R, A, S, [{k: {one: 1}} for k in range(na)], check=False)
    proj = GradedMatrix(R, S, B, [dict() for _ in range(na)] + [{k: {one: 1}} for k in range(len(B))],
                        check=False)
    return inc, proj


def _upper_block(R, A0, B0, A1, B1, d1, h, d2):
    """[[d1, h], [0, d2]] as a map A0+B0 -> A1+B1."""
    cols = []
    for j in range(len(A0)):
        cols.append(dict(d1.cols[j]) if A1 else {})
    na1 = len(A1)
    for j in range(len(B0)):
        col = dict(h.cols[j]) if h is not None and A1 else {}
        for k, t in d2.cols[j].items():
            col[na1 + k] = t
        cols.append(col)
    return GradedMatrix(R, tuple(A0) + tuple(B0), tuple(A1) + tuple(B1), cols, check=False)


def classical_horseshoe(f: ModuleMap, g: ModuleMap, length: int) -> ClassicalHorseshoe:
    """Horseshoe resolution of f.target from minimal resolutions of f.source and g.target."""
    R = f.source.ring
    M1, M, M2 = f.source, f.target, g.target
    P1 = free_resolution(M1, length)
    P2 = free_resolution(M2, length)
    e1 = f.lift @ P1.to_orig                    # P'_0 -> M
    lam = lift_through(g.lift, P2.to_orig, M2.pres)
    if lam is None:
        raise AssertionError("second map is not surjective")
    h = {}
    for i in range(1, length + 1):
        if P2.obj(i).ngens == 0:
            break
        if i == 1:
            hi = lift_through(e1, -(lam @ P2.diff(1)), M.pres) if P1.obj(0).ngens else None
        else:
            prev = h.get(i - 1)
            hi = lift_through(P1.diff(i - 1), -(prev @ P2.diff(i))) if prev is not None and P1.obj(i - 1).ngens \
                else None
        if hi is None and P1.obj(i - 1).ngens:
            raise AssertionError(f"horseshoe lift failed at {i}")
        h[i] = hi
    objs, diffs, inc, proj = {}, {}, {}, {}
    for i in range(0, length + 1):
        A, B = P1.obj(i).gens, P2.obj(i).gens
        if not A and not B:
            break
        objs[i] = GradedModule.free(R, tuple(A) + tuple(B))
        inc[i], proj[i] = _split_maps(R, A, B, objs[i].gens)
        if i >= 1:
            diffs[i] = _upper_block(R, A, B, P1.obj(i - 1).gens, P2.obj(i - 1).gens,
                                    P1.diff(i), h.get(i), P2.diff(i))
    aug = hstack([e1, lam], M.gens)
    aug = GradedMatrix(R, objs[0].gens, M.gens, aug.cols, check=False)
    return ClassicalHorseshoe(ChainComplex(R, objs, diffs, check=False), P1, P2, aug, inc, proj)


# ---------------------------------------------------------------- complete resolutions


@dataclass
class CompleteResolution:
    """Acyclic T with T_i = P_i (free) for i >= n and T_i C-projective for i < n.

    Built on indices [lo, hi] = [-w-1, n+w+1]; homology statements are
    certified on [-w, n+w].
    """
    T: ChainComplex
    P: Resolution
    n: int
    w: int
    certificates: dict = field(default_factory=dict)

    @property
    def window(self) -> tuple:
        return (-self.w, self.n + self.w)

    def indices(self) -> list:
        return list(range(-self.w, self.n + self.w + 1))


def _permute_module(G: GradedModule, perm: Sequence[int]) -> tuple:
    """Reorder generators: new generator k is old generator perm[k]."""
    R = G.ring
    inv = {old: k for k, old in enumerate(perm)}
    pres = G.pres
    cols = [{inv[i]: t for i, t in c.items()} for c in pres.cols]
    gens = [G.gens[o] for o in perm]
    one = _one(R)
    to_old = GradedMatrix(R, gens, G.gens, [{o: {one: 1}} for o in perm], check=False)
    return GradedModule(GradedMatrix(R, pres.source, gens, cols, check=False)), to_old


def complete_resolution(M: GradedModule, ctx: SemidualizingContext, w: int = 4, n: int | None = None,
                        P: Resolution | None = None, perm: Sequence[int] | None = None,
                        certify: bool = True, hilbert_window: Sequence[int] | None = None,
                        progress: Callable | None = None) -> CompleteResolution:
    """Splice a free resolution of M with the C-dual of a free resolution of (Omega^n M)^dagger."""
    R, C = ctx.ring, ctx.C
    if n is None:
        n = _require_dim(M, ctx, None)
    top = n + w + 1
    if P is None:
        P = free_resolution(M, top)
    K = P.syzygy_module(n)
    G = hom_module(K, C)
    Gm = G.module
    conv = GradedMatrix.identity(R, Gm.gens)
    if perm is not None:
        Gm, conv = _permute_module(Gm, perm)
    depth_needed = n + w          # Q_0 .. Q_{n+w}
    Q = free_resolution(Gm, depth_needed)
    # Q_0 generators -> elements of G (as combinations of G's generators)
    q0_to_G = conv @ Q.to_orig
    nC = C.ngens
    objs, diffs = {}, {}
    for i in range(n, top + 1):
        if P.obj(i).ngens:
            objs[i] = P.obj(i)
        if i > n and i in objs and i - 1 in objs:
            diffs[i] = P.diff(i)
    for j in range(0, depth_needed + 1):
        if Q.obj(j).ngens:
            objs[n - 1 - j] = hom_term(Q.obj(j).gens, C)
    for j in range(0, depth_needed):
        if n - 1 - j in objs and n - 2 - j in objs:
            diffs[n - 1 - j] = hom_dual_matrix(Q.diff(j + 1), C)
    # splice P_n -> Hom(Q_0, C): e_i |-> (q_l |-> psi_l(x_i))
    if n in objs and n - 1 in objs:
        Pn = objs[n].gens
        tgt = objs[n - 1].gens
        cols = []
        for i in range(len(Pn)):
            col = {}
            for l in range(len(Q.obj(0).gens)):
                for l2, coef in q0_to_G.cols[l].items():
                    for k, t in G.gen_maps[l2].cols[i].items():
                        prod = R.mul_terms(coef, t)
                        if prod:
                            cur = col.setdefault(l * nC + k, {})
                            for m, v in prod.items():
                                s = (cur.get(m, 0) + v) % R.p
                                if s:
                                    cur[m] = s
                                else:
                                    cur.pop(m)
                            if not cur:
                                col.pop(l * nC + k)
            cols.append(col)
        diffs[n] = GradedMatrix(R, Pn, tgt, cols, check=False)
    T = ChainComplex(R, objs, diffs, check=False)
    out = CompleteResolution(T, P, n, w)
    if certify:
        certify_complete(out, ctx, hilbert_window, progress)
    return out


def certify_complete(cr: CompleteResolution, ctx: SemidualizingContext,
                     hilbert_window: Sequence[int] | None = None, progress: Callable | None = None):
    T = cr.T
    T.check()
    lo, hi = cr.window
    for i in range(lo, hi + 1):
        wit = homology_witness(T, i)
        if wit is not None:
            raise AssertionError(f"complete resolution not acyclic at {i} (degree {wit[0]})")
        if progress:
            progress("acyclicity", i, hi)
    for i in range(cr.n, hi + 2):
        if T.obj(i).pres != cr.P.obj(i).pres:
            raise AssertionError(f"T_{i} differs from P_{i}")
    cr.certificates["acyclic"] = [lo, hi]
    cr.certificates["agrees_with_resolution_from"] = cr.n
    # Hom(T, C) exact on the window (degreewise)
    degs = list(hilbert_window) if hilbert_window is not None else default_window(8)
    view = HomView(T, ctx.C)
    for i in range(lo, hi + 1):
        for d in degs:
            h = homology_dim(view, -i, d)
            if h:
                raise AssertionError(f"Hom(T, C) not exact at {-i} in degree {d}")
    cr.certificates["hom_into_C_exact"] = {"indices": [lo, hi], "degrees": [degs[0], degs[-1]]}
    return cr


def tate_table(cr: CompleteResolution, N: GradedModule, indices=None, window=None) -> HomologyTable:
    """H_i(T (x) N) on certified indices."""
    window = default_window() if window is None else window
    idx = cr.indices() if indices is None else [i for i in indices if cr.window[0] <= i <= cr.window[1]]
    return homology_table(ModuleComplexView(tensor_complex(cr.T, N)), idx, window)


@dataclass
class TateTorTable:
    table: HomologyTable
    n: int
    window: tuple
    membership: ClassMembership | None = None


def tate_tor(M: GradedModule, N: GradedModule, ctx: SemidualizingContext, w: int = 4,
             window=None, cr: CompleteResolution | None = None, bound=None,
             check_membership: bool = True) -> TateTorTable:
    v = in_auslander_class(N, ctx, bound) if check_membership else None
    if v is not None and not v.member:
        raise ValueError(f"second argument is not in the Auslander class: {v.witness}")
    if cr is None:
        cr = complete_resolution(M, ctx, w)
    return TateTorTable(tate_table(cr, N, None, window), cr.n, cr.window, v)


def tensor_homology_vanishes(cr: CompleteResolution, J: GradedModule, window=None) -> list:
    """Indices/degrees where T (x) J has nonzero homology inside the certified window."""
    t = tate_table(cr, J, None, window)
    return [(i, d) for i, v in t.data.items() for d in v]


# ---------------------------------------------------------------- long exact sequences


def les_second_argument(cr: CompleteResolution, f: ModuleMap, g: ModuleMap, window=None,
                        indices=None) -> SequenceReport:
    """LES of Tate Tor for 0 -> N' -f-> N -g-> N'' -> 0, with T fixed."""
    window = default_window() if window is None else window
    T = cr.T
    A = tensor_complex(T, f.source)
    B = tensor_complex(T, f.target)
    Cx = tensor_complex(T, g.target)
    fl = {i: kron_identity_left(T.obj(i).gens, f.lift) for i in T.objects}
    gl = {i: kron_identity_left(T.obj(i).gens, g.lift) for i in T.objects}
    # kron_identity_left puts T's index slowest, matching tensor_module(T_i, N)
    lo, hi = cr.window
    idx = list(range(lo + 1, hi + 1)) if indices is None else indices
    return les_report(A, B, Cx, fl, gl, idx, window, ("T(x)N'", "T(x)N", "T(x)N''"))


@dataclass
class Horseshoe:
    T: ChainComplex
    sub: CompleteResolution
    quo: CompleteResolution
    n: int
    w: int
    inc: dict
    proj: dict

    @property
    def window(self):
        return (-self.w, self.n + self.w)


def horseshoe_complete(f: ModuleMap, g: ModuleMap, ctx: SemidualizingContext, w: int = 4,
                       n: int | None = None, certify: bool = True) -> Horseshoe:
    """Complete resolution of the middle term of 0 -> M' -f-> M -g-> M'' -> 0, degreewise split."""
    R = ctx.ring
    M1, M, M2 = f.source, f.target, g.target
    if n is None:
        n = max(_require_dim(X, ctx, None) for X in (M1, M, M2))
    # work with minimal presentations of the outer terms
    M1m = minimized(M1)
    M2m = minimized(M2)
    f = _transport(f, src_new=M1m)
    g = _transport(g, tgt_new=M2m)
    M1, M2 = M1m[0], M2m[0]
    T1 = complete_resolution(M1, ctx, w, n, certify=certify)
    T2 = complete_resolution(M2, ctx, w, n, certify=certify)
    top = n + w + 1
    # lambda: P''_0 -> M lifting the identity of M'' through g
    lam = lift_through(g.lift, GradedMatrix.identity(R, M2.gens), M2.pres)
    if lam is None:
        raise AssertionError("second map is not surjective")
    h: dict = {}
    for i in range(1, top + 1):
        src = T2.T.obj(i)
        tgt = T1.T.obj(i - 1)
        if src.ngens == 0 or tgt.ngens == 0:
            continue
        if i > n:
            if i == 1:
                rhs = -(lam @ T2.T.diff(1))
                hi_ = lift_through(f.lift, rhs, M.pres)
            else:
                prev = h.get(i - 1)
                if prev is None:
                    continue
                rhs = -(prev @ T2.T.diff(i))
                hi_ = lift_through(T1.T.diff(i - 1), rhs, None)
            if hi_ is None:
                raise AssertionError(f"horseshoe lift failed at {i}")
            h[i] = hi_
    # the free part below n+1 is replaced: solve downward h_i o d''_{i+1} = -d'_i h_{i+1}
    for i in range(n, -w - 1, -1):
        src = T2.T.obj(i)
        tgt = T1.T.obj(i - 1)
        if src.ngens == 0 or tgt.ngens == 0:
            continue
        up = h.get(i + 1)
        rhs = -(T1.T.diff(i) @ up) if up is not None and (i in T1.T.diffs) else None
        if rhs is None:
            rhs = GradedMatrix.zero(R, T2.T.obj(i + 1).gens, tgt.gens)
        cons = [Constraint(T2.T.diff(i + 1), GradedMatrix.identity(R, tgt.gens), tgt.pres, rhs)]
        sol = find_map(src, tgt, cons)
        if sol is None:
            raise AssertionError(f"could not extend the horseshoe below {i + 1}")
        h[i] = sol
    objs, diffs, inc, proj = {}, {}, {}, {}
    one = _one(R)
    lo = -w - 1
    for i in range(lo, top + 1):
        A, B = T1.T.obj(i), T2.T.obj(i)
        if A.ngens + B.ngens == 0:
            continue
        objs[i] = direct_sum([A, B])
        na = A.ngens
        inc[i] = GradedMatrix(R, A.gens, objs[i].gens, [{k: {one: 1}} for k in range(na)], check=False)
        proj[i] = GradedMatrix(R, objs[i].gens, B.gens,
                               [dict() for _ in range(na)] + [{k: {one: 1}} for k in range(B.ngens)],
                               check=False)
    for i in range(lo + 1, top + 1):
        if i not in objs or i - 1 not in objs:
            continue
        A0, B0 = T1.T.obj(i), T2.T.obj(i)
        A1, B1 = T1.T.obj(i - 1), T2.T.obj(i - 1)
        d1 = T1.T.diff(i)
        d2 = T2.T.diff(i)
        hh = h.get(i, GradedMatrix.zero(R, B0.gens, A1.gens))
        top_row = hstack([d1, hh], A1.gens) if A0.ngens else hh
        bot_row = hstack([GradedMatrix.zero(R, A0.gens, B1.gens), d2], B1.gens)
        D = vstack([GradedMatrix(R, objs[i].gens, A1.gens, top_row.cols, check=False),
                    GradedMatrix(R, objs[i].gens, B1.gens, bot_row.cols, check=False)])
        diffs[i] = GradedMatrix(R, objs[i].gens, objs[i - 1].gens, D.cols, check=False)
    T = ChainComplex(R, objs, diffs, check=certify)
    hs = Horseshoe(T, T1, T2, n, w, inc, proj)
    if certify:
        for i in range(-w, n + w + 1):
            if homology_witness(T, i) is not None:
                raise AssertionError(f"horseshoe complex not acyclic at {i}")
    return hs


def les_first_argument(f: ModuleMap, g: ModuleMap, N: GradedModule, ctx: SemidualizingContext,
                       w: int = 4, window=None, hs: Horseshoe | None = None) -> SequenceReport:
    """LES of Tate Tor for 0 -> M' -> M -> M'' -> 0 via the horseshoe of complete resolutions."""
    window = default_window() if window is None else window
    if hs is None:
        hs = horseshoe_complete(f, g, ctx, w)
    A = tensor_complex(hs.sub.T, N)
    B = tensor_complex(hs.T, N)
    Cx = tensor_complex(hs.quo.T, N)
    fl = {i: kron_identity_right(m, N.gens) for i, m in hs.inc.items()}
    gl = {i: kron_identity_right(m, N.gens) for i, m in hs.proj.items()}
    lo, hi = hs.window
    return les_report(A, B, Cx, fl, gl, list(range(lo + 1, hi + 1)), window,
                      ("T'(x)N", "T(x)N", "T''(x)N"))
