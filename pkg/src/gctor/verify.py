"""Checkers for the absolute/relative/Tate exact sequence, depth formulas and Tate duality."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg as la
from .complexes import (INF, ChainComplex, HomologyTable, default_window, depth, ext_table,
                        free_resolution, homology_at, homology_vanishes, tensor_complex)
from .les import SpaceCache, check_position, connecting_map, induced_map
from .modules import (Constraint, GradedMatrix, GradedModule, find_map, kron_identity_right,
                      lift_through, minimal_presentation, tensor_module)
from .relative_tate import (GCApproximation, classical_horseshoe,
                            complete_resolution, gc_approximation, gc_hull, lift_chain_map,
                            proper_resolution_parts, tate_table)
from .semidualizing import (SemidualizingContext, gc_dimension, ic_dimension, in_auslander_class,
                            is_totally_C_reflexive, transpose)

SCHEMA_VERSION = 1


class PreconditionError(ValueError):
    pass


def _inverse(m, p):
    n = m.nrows()
    if n != m.ncols():
        return None
    if n == 0:
        return la.zeros(0, 0, p)
    if la.rank(m) < n:
        return None
    return la.solve(m, la.identity(n, p), p)


def _mul(*ms, p):
    out = ms[0]
    for m in ms[1:]:
        out = la.mul(out, m, p)
    return out


def _rows(m) -> list:
    return la.to_rows(m) if m.nrows() and m.ncols() else []


def _table_from(spaces: SpaceCache, indices, degrees) -> HomologyTable:
    data = {}
    for i in indices:
        v = {d: h for d in degrees if (h := spaces.space(i, d).dim)}
        data[i] = v
    return HomologyTable(data)


@dataclass
class AMSequenceReport:
    """0 -> Tate_n -> Tor_n -> rel_n -> Tate_{n-1} -> ... -> Tor_1 -> rel_1 -> 0, degreewise."""
    n: int
    tor: HomologyTable
    relative: HomologyTable
    tate: HomologyTable
    positions: list = field(default_factory=list)
    isomorphisms: list = field(default_factory=list)
    maps: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    approximation: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(q.exact for q in self.positions) and all(ok for _, _, _, ok in self.isomorphisms)

    @property
    def verdict(self) -> str:
        return "exact" if self.exact else "not exact"

    def first_failure(self):
        for q in self.positions:
            if not q.exact:
                return q.to_json()
        for name, i, d, ok in self.isomorphisms:
            if not ok:
                return {"label": f"{name}_{i} not invertible", "degree": d}
        return None

    def to_json(self, with_maps: bool = False) -> dict:
        out = {"schema": SCHEMA_VERSION, "n": self.n, "verdict": self.verdict,
               "positions_checked": len(self.positions),
               "first_failure": self.first_failure(),
               "tor": self.tor.to_json(), "relative_tor": self.relative.to_json(),
               "tate_tor": self.tate.to_json(), "notes": self.notes,
               "approximation": self.approximation}
        if with_maps:
            out["maps"] = {name: {str(i): {str(d): m for d, m in v.items()} for i, v in per.items()}
                           for name, per in self.maps.items()}
        return out


def verify_am_sequence(M: GradedModule, N: GradedModule, ctx: SemidualizingContext,
                       window: Sequence[int] | None = None, bound: int | None = None,
                       approx: GCApproximation | None = None, check_membership: bool = True,
                       keep_maps: bool = False) -> AMSequenceReport:
    """Build psi_i, xi_i, delta'_i from an approximation 0 -> Y -> X -> M -> 0 and check exactness."""
    degrees = default_window(20) if window is None else list(window)
    R, p = ctx.ring, ctx.ring.p
    if check_membership:
        v = in_auslander_class(N, ctx, bound)
        if not v.member:
            raise PreconditionError(f"second module not certified in the Auslander class: {v.witness}")
    n = gc_dimension(M, ctx, bound)
    if n is None or n == INF:
        raise PreconditionError("G_C-dimension of the first module is not finite")
    n = 0 if n == -INF else int(n)
    empty = HomologyTable({})
    if n == 0:
        rep = AMSequenceReport(0, empty, empty, empty)
        rep.notes.append("totally C-reflexive: empty sequence, Tate and absolute Tor agree in positive degrees")
        return rep
    if approx is None:
        approx = gc_approximation(M, ctx, n)
    Mm, X, Y = approx.M, approx.X, approx.Y
    crM = complete_resolution(Mm, ctx, w=1, n=n, certify=False)
    crX = complete_resolution(X, ctx, w=n + 1, n=0, certify=False)
    hs = classical_horseshoe(approx.iota, approx.pi, n + 2)

    # comparison P^X -> horseshoe resolution, then chain map T^X -> T^M over pi
    c0 = lift_through(hs.aug, crX.P.to_orig, X.pres)
    if c0 is None:
        raise AssertionError("comparison with the horseshoe resolution failed")
    c = lift_chain_map(crX.P, hs.P, c0, n + 2)
    F = {i: hs.proj[i] @ c[i] for i in c if i in hs.proj}
    for i in range(n - 1, 0, -1):
        src, tgt = crX.T.obj(i), crM.T.obj(i)
        if src.ngens == 0 or tgt.ngens == 0:
            F[i] = GradedMatrix.zero(R, src.gens, tgt.gens)
            continue
        rhs = crM.T.diff(i + 1) @ F[i + 1]
        sol = find_map(src, tgt, [Constraint(crX.T.diff(i + 1), GradedMatrix.identity(R, tgt.gens),
                                             tgt.pres, rhs)])
        if sol is None:
            raise AssertionError(f"no chain map between complete resolutions at {i}")
        F[i] = sol

    Xprop, CQ, aug = proper_resolution_parts(approx, ctx, n + 1)
    kappa = {}
    if Y.ngens:
        k0 = lift_through(aug, hs.sub.to_orig, Y.pres)
        if k0 is None:
            raise AssertionError("C-projective resolution does not cover the kernel")
        kappa = lift_chain_map(hs.sub, CQ, k0, n)

    def tens(m):
        return kron_identity_right(m, N.gens)

    sTX = SpaceCache(tensor_complex(crX.T, N))
    sTM = SpaceCache(tensor_complex(crM.T, N))
    sY = SpaceCache(tensor_complex(hs.sub, N))
    sMid = SpaceCache(tensor_complex(hs.P, N))
    sM = SpaceCache(tensor_complex(hs.quo, N))
    sRel = SpaceCache(tensor_complex(Xprop, N))
    incT = {i: tens(m) for i, m in hs.inc.items()}
    projT = {i: tens(m) for i, m in hs.proj.items()}
    FT = {i: tens(m) for i, m in F.items()}
    cT = {i: tens(m) for i, m in c.items()}
    KT = {i + 1: tens(m) for i, m in kappa.items()}       # P^Y_{i} -> Xprop_{i+1}

    def to_rel(i, vecs, d):
        h = sRel.space(i, d)
        if h.dim == 0 or vecs.ncols() == 0:
            return la.zeros(h.dim, vecs.ncols(), p)
        if i not in KT:
            raise AssertionError(f"missing comparison into the proper resolution at {i}")
        return h.coords(la.mul(KT[i].block(d), vecs, p))

    idx = list(range(1, n + 1))
    rep = AMSequenceReport(n, _table_from(sM, idx, degrees), _table_from(sRel, idx, degrees),
                           _table_from(sTM, idx, degrees))
    rep.approximation = {"Y": list(Y.gens), "X": list(X.gens), "pc_dim_Y": approx.y_pc_dim}
    names = ("psi", "xi", "delta'")
    maps = {nm: {i: {} for i in idx} for nm in names}
    for d in degrees:
        psi, xi, dprime = {}, {}, {}
        ginv = {}
        for i in idx:
            f_i = induced_map(sTX, sTM, FT.get(i), i, d)
            g_i = induced_map(sTX, sMid, cT.get(i), i, d)
            phi = induced_map(sMid, sM, projT.get(i), i, d)
            f_inv, g_inv = _inverse(f_i, p), _inverse(g_i, p)
            rep.isomorphisms.append(("f", i, d, f_inv is not None))
            rep.isomorphisms.append(("g", i, d, g_inv is not None))
            if f_inv is None or g_inv is None:
                continue
            ginv[i] = (f_i, g_inv)
            psi[i] = _mul(phi, g_i, f_inv, p=p)
            delta = connecting_map(sY, sMid, sM, incT, projT, i, d)
            hy = sY.space(i - 1, d)
            vecs = la.mul(hy.reps, delta, p) if hy.dim and delta.ncols() else la.zeros(hy.n, delta.ncols(), p)
            xi[i] = to_rel(i, vecs, d)
        for i in idx[:-1]:
            if i not in ginv:
                continue
            hy = sY.space(i, d)
            alpha = to_rel(i + 1, hy.reps if hy.dim else la.zeros(hy.n, 0, p), d)
            a_inv = _inverse(alpha, p)
            rep.isomorphisms.append(("alpha", i + 1, d, a_inv is not None))
            if a_inv is None:
                continue
            beta = induced_map(sY, sMid, incT.get(i), i, d)
            f_i, g_inv = ginv[i]
            dprime[i] = _mul(f_i, g_inv, beta, a_inv, p=p)
        if any(i not in psi for i in idx) or any(i not in dprime for i in idx[:-1]):
            continue
        for i in reversed(idx):
            tate_dim = sTM.space(i, d).dim
            tor_dim = sM.space(i, d).dim
            rel_dim = sRel.space(i, d).dim
            rep.positions.append(check_position(f"Tate_{i}", d, tate_dim, dprime.get(i), psi[i], p))
            rep.positions.append(check_position(f"Tor_{i}", d, tor_dim, psi[i], xi[i], p))
            rep.positions.append(check_position(f"rel_{i}", d, rel_dim, xi[i], dprime.get(i - 1), p))
        if keep_maps:
            for i in idx:
                if psi[i].nrows() or psi[i].ncols():
                    maps["psi"][i][d] = _rows(psi[i])
                    maps["xi"][i][d] = _rows(xi[i])
                if i in dprime and (dprime[i].nrows() or dprime[i].ncols()):
                    maps["delta'"][i][d] = _rows(dprime[i])
    rep.maps = maps if keep_maps else {}
    return rep


# ---------------------------------------------------------------- depth formulas


@dataclass
class DepthFormulaReport:
    applicable: bool
    q: int | None = None
    depth_M: float | None = None
    depth_N: float | None = None
    depth_R: float | None = None
    depth_tor: float | None = None
    reason: str = ""
    notes: list = field(default_factory=list)

    @property
    def lhs(self):
        return None if not self.applicable else self.depth_M + self.depth_N

    @property
    def rhs(self):
        return None if not self.applicable else self.depth_R + self.depth_tor - self.q

    @property
    def holds(self) -> bool | None:
        return None if not self.applicable else self.lhs == self.rhs

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return f"not applicable ({self.reason})"
        return "holds" if self.holds else "fails"

    def to_json(self) -> dict:
        def num(x):
            return None if x is None else (str(x) if x in (INF, -INF) else int(x))
        return {"schema": SCHEMA_VERSION, "applicable": self.applicable, "verdict": self.verdict,
                "q": self.q, "depth_M": num(self.depth_M), "depth_N": num(self.depth_N),
                "depth_R": num(self.depth_R), "depth_tor_q": num(self.depth_tor),
                "lhs": num(self.lhs), "rhs": num(self.rhs), "notes": self.notes}


def _top_index(X: ChainComplex, upto: int) -> int | None:
    """Largest i <= upto with H_i(X) != 0 (None if all vanish)."""
    for i in range(upto, -1, -1):
        if not homology_vanishes(X, i):
            return i
    return None


def _finish(rep: DepthFormulaReport, M, N, ctx, tor_q: GradedModule):
    rep.depth_tor = depth(tor_q)
    if rep.q != 0 and rep.depth_tor > 1:
        rep.applicable = False
        rep.reason = f"q = {rep.q} and the top Tor has depth {rep.depth_tor}"
        return rep
    rep.depth_M = depth(M)
    rep.depth_N = depth(N)
    rep.depth_R = ctx.depth_ring
    return rep


def verify_depth_formula_absolute(M: GradedModule, N: GradedModule, ctx: SemidualizingContext,
                                  bound: int | None = None) -> DepthFormulaReport:
    """depth M + depth N = depth R + depth Tor_q(M, N) - q with q the top nonvanishing Tor."""
    rep = DepthFormulaReport(True)
    n = gc_dimension(M, ctx, bound)
    if n is None or n == INF:
        return DepthFormulaReport(False, reason="G_C-dimension not finite")
    if ic_dimension(N, ctx) == INF:
        return DepthFormulaReport(False, reason="I_C-injective dimension not finite")
    slack = ctx.depth_ring + 6 if bound is None else bound
    P = free_resolution(M, slack + 1)
    pd = P.pd()
    top = int(pd) if pd != INF else slack
    X = tensor_complex(P, N)
    q = _top_index(X, top)
    if q is None:
        return DepthFormulaReport(False, reason="M (x) N and all Tor vanish")
    if pd == INF and q == top:
        return DepthFormulaReport(False, reason=f"q infinite at bound {top}")
    rep.q = q
    rep.notes.append(f"Tor vanishes for {q} < i <= {top}" + (" (resolution terminates)" if pd != INF
                                                              else f" (bound {top})"))
    return _finish(rep, M, N, ctx, homology_at(X, q))


def tate_vanishes_nonpositive(M, N, ctx, w: int = 4, window=None, cr=None) -> bool:
    if cr is None:
        cr = complete_resolution(M, ctx, w)
    t = tate_table(cr, N, [i for i in cr.indices() if i <= 0], window)
    return t.is_zero()


def verify_depth_formula_relative(M: GradedModule, N: GradedModule, ctx: SemidualizingContext,
                                  bound: int | None = None, w: int = 4, window=None
                                  ) -> DepthFormulaReport:
    """Same formula with relative Tor, under vanishing of Tate Tor in nonpositive degrees."""
    v = in_auslander_class(N, ctx, bound)
    if not v.member:
        return DepthFormulaReport(False, reason=f"N not certified in A_C ({v.witness})")
    n = gc_dimension(M, ctx, bound)
    if n is None or n == INF:
        return DepthFormulaReport(False, reason="G_C-dimension not finite")
    if not tate_vanishes_nonpositive(M, N, ctx, w, window):
        return DepthFormulaReport(False, reason="Tate Tor does not vanish in nonpositive degrees")
    approx = gc_approximation(M, ctx, n)
    Xp, _, _ = proper_resolution_parts(approx, ctx, approx.n)
    X = tensor_complex(Xp, N)
    q = _top_index(X, approx.n)
    if q is None:
        return DepthFormulaReport(False, reason="all relative Tor vanish")
    rep = DepthFormulaReport(True, q=q)
    rep.notes.append(f"proper resolution has length {approx.n}; relative Tor vanishes above it")
    return _finish(rep, approx.M, N, ctx, homology_at(X, q))


# ---------------------------------------------------------------- Tate duality and friends


@dataclass
class ComparisonReport:
    name: str
    rows: list = field(default_factory=list)      # (index, left vector, right vector)
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(a == b for _, a, b in self.rows)

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "check": self.name, "holds": self.holds,
                "rows": [{"index": i, "left": {str(d): v for d, v in sorted(a.items())},
                          "right": {str(d): v for d, v in sorted(b.items())}} for i, a, b in self.rows],
                "notes": self.notes}


def verify_duality(M: GradedModule, N: GradedModule, ctx: SemidualizingContext, depth_limit: int = 3,
                   window=None, bound: int | None = None) -> ComparisonReport:
    """Tate_i(M, N) against Ext^{1-i}(Tr_C M, N (x) C) for i = 0, -1, ..., -depth_limit."""
    window = default_window() if window is None else window
    vm = is_totally_C_reflexive(M, ctx, bound)
    if not vm.member:
        raise PreconditionError(f"first module not certified totally C-reflexive: {vm.witness}")
    vn = in_auslander_class(N, ctx, bound)
    if not vn.member:
        raise PreconditionError(f"second module not certified in A_C: {vn.witness}")
    cr = complete_resolution(M, ctx, w=depth_limit + 1, n=0)
    idx = list(range(0, -depth_limit - 1, -1))
    tate = tate_table(cr, N, idx, window)
    Tr = transpose(M, ctx)
    NC = minimal_presentation(tensor_module(N, ctx.C)).module
    rep = ComparisonReport("duality")
    if Tr.ngens == 0 or NC.ngens == 0:
        rep.notes.append("transpose or N (x) C is zero")
        ext = HomologyTable({})
    else:
        ext = ext_table(Tr, NC, [1 - i for i in idx], window)
    for i in idx:
        rep.rows.append((i, tate.vector(i), ext.vector(1 - i)))
    return rep


def verify_hull_lemma(M: GradedModule, N: GradedModule, ctx: SemidualizingContext, w: int = 4,
                      window=None, upto: int | None = None) -> ComparisonReport | None:
    """When Tate_0(M, N) = 0: relative Tor_i(M, N) against Tor_i(hull middle term, N), i >= 1.

    Returns None when the hypothesis fails on this instance.
    """
    window = default_window() if window is None else window
    approx = gc_approximation(M, ctx)
    if approx.n == 0:
        return None
    cr = complete_resolution(approx.M, ctx, w, n=approx.n)
    if not tate_table(cr, N, [0], window).is_zero():
        return None
    hull = gc_hull(M, ctx, approx=approx)
    top = approx.n + 1 if upto is None else upto
    Xp, _, _ = proper_resolution_parts(approx, ctx, top)
    from .complexes import ModuleComplexView, homology_table, tor_table
    rel = homology_table(ModuleComplexView(tensor_complex(Xp, N)), range(1, top + 1), window)
    tor = tor_table(hull.Y, N, range(1, top + 1), window)
    rep = ComparisonReport("hull lemma")
    for i in range(1, top + 1):
        rep.rows.append((i, rel.vector(i), tor.vector(i)))
    return rep


def verify_independence(M: GradedModule, N: GradedModule, ctx: SemidualizingContext, w: int = 4,
                        window=None, perm=None, seed: int = 0) -> ComparisonReport:
    """Tate tables from two complete resolutions differing in the generator order of the dual."""
    import random
    from .modules import hom_module
    window = default_window() if window is None else window
    cr1 = complete_resolution(M, ctx, w)
    P = cr1.P
    K = P.syzygy_module(cr1.n)
    m = hom_module(K, ctx.C).module.ngens
    if perm is None:
        perm = list(range(m))[::-1]
        if m > 2:
            random.Random(seed).shuffle(perm)
    cr2 = complete_resolution(M, ctx, w, n=cr1.n, perm=perm)
    t1, t2 = tate_table(cr1, N, None, window), tate_table(cr2, N, None, window)
    rep = ComparisonReport("independence")
    rep.notes.append(f"generator order {perm}")
    for i in cr1.indices():
        rep.rows.append((i, t1.vector(i), t2.vector(i)))
    return rep
