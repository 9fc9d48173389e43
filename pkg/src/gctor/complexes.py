"""Chain complexes of presented modules, resolutions, degreewise homology, Ext/Tor, depth."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import linalg as la
from .modules import (GradedMatrix, GradedModule, ModuleMap, SchreyerBound, block_diag,
                      free_basis, hstack,
                      homology_module, in_submodule, kron_identity_left, kron_identity_right,
                      minimal_presentation, mult_matrix, syzygy, tensor_module, zero_module)
from .ring import GradedRing

INF = math.inf


class ChainComplex:
    """Homological complex X_i (i decreasing along differentials) of presented modules.

    ``diffs[i]`` is the lift F0(X_i) -> F0(X_{i-1}). Indices outside the
    stored range are zero modules.
    """

    def __init__(self, ring: GradedRing, objects: dict, diffs: dict | None = None, check: bool = True):
        self.ring = ring
        self.objects = dict(objects)
        self.diffs = dict(diffs or {})
        idx = list(self.objects)
        self.lo = min(idx) if idx else 0
        self.hi = max(idx) if idx else -1
        if check:
            self.check()

    @property
    def window(self) -> tuple:
        return (self.lo, self.hi)

    def obj(self, i: int) -> GradedModule:
        m = self.objects.get(i)
        return m if m is not None else zero_module(self.ring)

    def diff(self, i: int) -> GradedMatrix:
        d = self.diffs.get(i)
        if d is not None:
            return d
        return GradedMatrix.zero(self.ring, self.obj(i).gens, self.obj(i - 1).gens)

    def map(self, i: int) -> ModuleMap:
        return ModuleMap(self.obj(i), self.obj(i - 1), self.diff(i), check=False)

    def check(self):
        for i, d in self.diffs.items():
            src, tgt = self.obj(i), self.obj(i - 1)
            if d.source != src.gens or d.target != tgt.gens:
                raise ValueError(f"differential {i} has wrong shape")
            if src.pres.ncols and not in_submodule(d @ src.pres, tgt.pres):
                raise ValueError(f"differential {i} does not respect presentations")
        for i in self.diffs:
            if i - 1 in self.diffs:
                comp = self.diffs[i - 1] @ self.diffs[i]
                if not in_submodule(comp, self.obj(i - 2).pres):
                    raise ValueError(f"d_{i-1} o d_{i} != 0")

    def is_free(self) -> bool:
        return all(m.is_free() for m in self.objects.values())

    def betti(self) -> dict:
        return {i: self.obj(i).ngens for i in range(self.lo, self.hi + 1)}


def shift(X: ChainComplex, n: int) -> ChainComplex:
    """Sigma^n X: (Sigma^n X)_i = X_{i-n}, differential (-1)^n d."""
    sign = -1 if n % 2 else 1
    objs = {i + n: m for i, m in X.objects.items()}
    diffs = {i + n: d.scale(sign) for i, d in X.diffs.items()}
    return ChainComplex(X.ring, objs, diffs, check=False)


def hard_truncate_above(X: ChainComplex, n: int) -> ChainComplex:
    """X_{>=n}: keep X_i for i >= n, zero below."""
    objs = {i: m for i, m in X.objects.items() if i >= n}
    diffs = {i: d for i, d in X.diffs.items() if i - 1 >= n}
    return ChainComplex(X.ring, objs, diffs, check=False)


def complexes_equal(X: ChainComplex, Y: ChainComplex, lo: int, hi: int) -> bool:
    """Same objects (presentations) and differentials for lo <= i <= hi."""
    for i in range(lo, hi + 1):
        if X.obj(i).pres != Y.obj(i).pres:
            return False
        if i > lo and X.diff(i) != Y.diff(i):
            return False
    return True


# ---------------------------------------------------------------- resolutions


class Resolution(ChainComplex):
    """Minimal free resolution P of a module; P_0 = F0 of ``module`` (minimally presented).

    ``to_min`` maps generators of the original presentation to those of
    ``module`` and ``to_orig`` goes back.
    """

    def __init__(self, ring, objects, diffs, module: GradedModule, to_min: GradedMatrix,
                 to_orig: GradedMatrix, length: int):
        super().__init__(ring, objects, diffs, check=False)
        self.module = module
        self.to_min = to_min
        self.to_orig = to_orig
        self.length = length

    def pd(self) -> float:
        """Projective dimension if the resolution terminated within its length."""
        for i in range(self.length + 1):
            if self.obj(i).ngens == 0:
                return i - 1 if i > 0 else -INF
        return INF

    def syzygy_module(self, n: int) -> GradedModule:
        """Omega^n M = coker(d_{n+1}), generated by the basis of P_n."""
        if n == 0:
            return self.module
        d = self.diff(n + 1)
        return GradedModule(GradedMatrix(self.ring, d.source, self.obj(n).gens, d.cols, check=False))


_RES_LOCK = threading.Lock()


def free_resolution(M: GradedModule, length: int, progress: Callable | None = None) -> Resolution:
    """Minimal graded free resolution of M up to homological degree ``length``."""
    if length < 0:
        raise ValueError("length must be >= 0")
    memo = M.ring.cache("resolution")
    key = M.pres
    with _RES_LOCK:
        hit = memo.get(key)
    if hit is not None and hit[0].length >= length:
        res, _ = hit
        if res.length == length:
            return res
        objs = {i: m for i, m in res.objects.items() if i <= length}
        diffs = {i: d for i, d in res.diffs.items() if i <= length}
        return Resolution(res.ring, objs, diffs, res.module, res.to_min, res.to_orig, length)
    R = M.ring
    pr = minimal_presentation(M)
    Mm = pr.module
    objs = {0: GradedModule.free(R, Mm.gens)}
    diffs = {}
    d = Mm.pres
    start = 1
    if hit is not None:
        res, _ = hit
        objs = dict(res.objects)
        diffs = dict(res.diffs)
        start = res.length + 1
        d = diffs.get(res.length)
        d = syzygy(d) if d is not None else None
        if start == 1:
            d = Mm.pres
    for i in range(start, length + 1):
        if d is None or d.ncols == 0:
            break
        objs[i] = GradedModule.free(R, d.source)
        diffs[i] = d
        if progress:
            progress("resolution", i, length)
        if i < length:
            d = syzygy(d)
    res = Resolution(R, objs, diffs, Mm, pr.to_new, pr.to_old, length)
    with _RES_LOCK:
        cur = memo.get(key)
        if cur is None or cur[0].length < length:
            memo[key] = (res, None)
    return res


def resolution_from_matrices(ring: GradedRing, module: GradedModule, diffs: dict, length: int) -> Resolution:
    """Wrap an explicitly given free resolution (diffs[i]: P_i -> P_{i-1})."""
    objs = {0: GradedModule.free(ring, module.gens)}
    for i in sorted(diffs):
        objs[i] = GradedModule.free(ring, diffs[i].source)
    ident = GradedMatrix.identity(ring, module.gens)
    return Resolution(ring, objs, diffs, module, ident, ident, length)


# ---------------------------------------------------------------- derived complexes


def tensor_complex(X: ChainComplex, N: GradedModule) -> ChainComplex:
    """X (x) N with the pair presentation of each term."""
    objs = {i: tensor_module(m, N) for i, m in X.objects.items()}
    diffs = {i: kron_identity_right(d, N.gens) for i, d in X.diffs.items()}
    return ChainComplex(X.ring, objs, diffs, check=False)


def tensor_left_complex(N: GradedModule, X: ChainComplex) -> ChainComplex:
    """N (x) X with N's generator index slowest."""
    objs = {i: tensor_module(N, m) for i, m in X.objects.items()}
    diffs = {i: kron_identity_left(N.gens, d) for i, d in X.diffs.items()}
    return ChainComplex(X.ring, objs, diffs, check=False)


def hom_term(F_degrees: Sequence[int], A: GradedModule) -> GradedModule:
    """Hom(sum R(-a_k), A) = sum A(a_k), generators (k, j) with j fastest."""
    R = A.ring
    gens = [c - a for a in F_degrees for c in A.gens]
    if not F_degrees:
        return zero_module(R)
    rel = block_diag([A.pres.shift(-a) for a in F_degrees], R)
    return GradedModule(GradedMatrix(R, rel.source, gens, rel.cols, check=False))


def hom_dual_matrix(d: GradedMatrix, A: GradedModule) -> GradedMatrix:
    """Hom(d, A): Hom(F_tgt, A) -> Hom(F_src, A), u |-> u o d."""
    R = A.ring
    nA = A.ngens
    src = [c - a for a in d.target for c in A.gens]
    tgt = [c - b for b in d.source for c in A.gens]
    cols = [dict() for _ in src]
    for l, col in enumerate(d.cols):
        for k, t in col.items():
            for j in range(nA):
                cols[k * nA + j][l * nA + j] = t
    return GradedMatrix(R, src, tgt, cols, check=False)


def hom_complex(P: ChainComplex, A: GradedModule) -> ChainComplex:
    """Hom(P, A) for a complex of free modules, placed in index -i."""
    objs = {-i: hom_term(m.gens, A) for i, m in P.objects.items()}
    diffs = {}
    for i, d in P.diffs.items():
        # d_i: P_i -> P_{i-1} gives Hom(P_{i-1}, A) -> Hom(P_i, A), index -(i-1) -> -i
        diffs[-(i - 1)] = hom_dual_matrix(d, A)
    return ChainComplex(P.ring, objs, diffs, check=False)


# ---------------------------------------------------------------- degreewise homology


class ComplexView:
    """Degree-d linear data of a complex: ambient dims, subspaces, relations, differentials."""

    def ambient(self, i: int, d: int) -> int:
        raise NotImplementedError

    def subspace(self, i: int, d: int):
        return None

    def relations(self, i: int, d: int):
        raise NotImplementedError

    def differential(self, i: int, d: int):
        raise NotImplementedError

    def min_degree(self, i: int):
        return None


class ModuleComplexView(ComplexView):
    def __init__(self, X: ChainComplex):
        self.X = X
        self.p = X.ring.p
        self._stacked: dict = {}

    def ambient(self, i, d):
        return free_basis(self.X.ring, self.X.obj(i).gens, d).size

    def relations(self, i, d):
        m = self.X.obj(i)
        if m.pres.ncols == 0:
            return la.zeros(self.ambient(i, d), 0, self.p)
        return m.pres.block(d)

    def differential(self, i, d):
        return self.X.diff(i).block(d)

    def min_degree(self, i):
        g = self.X.obj(i).gens
        return min(g) if g else None

    def cycle_matrix(self, i) -> GradedMatrix:
        """[d_i | relations of X_{i-1}]: its kernel projects onto the cycles."""
        key = ("out", i)
        m = self._stacked.get(key)
        if m is None:
            tgt = self.X.obj(i - 1)
            d = self.X.diff(i)
            m = hstack([d, tgt.pres], tgt.gens) if tgt.pres.ncols else d
            self._stacked[key] = m
        return m

    def boundary_matrix(self, i) -> GradedMatrix:
        """[relations of X_i | d_{i+1}]: spans the boundaries."""
        key = ("in", i)
        m = self._stacked.get(key)
        if m is None:
            src = self.X.obj(i)
            m = hstack([src.pres, self.X.diff(i + 1)], src.gens)
            self._stacked[key] = m
        return m


class HomView(ComplexView):
    """Hom(X, A) for a complex X of presented modules, in index -i (degreewise).

    Hom(X_i, A)_d sits inside U = sum_k F0(A)_{a_k + d} as the subspace V of
    tuples sending every relation of X_i into the relations of A; the
    relation subspace K is sum_k im(pres A)_{a_k + d}.
    """

    def __init__(self, X: ChainComplex, A: GradedModule):
        self.X, self.A = X, A
        self.R = X.ring
        self.p = X.ring.p
        self._cache: dict = {}

    def _layout(self, i, d):
        return self._layout_for(self.X.obj(-i).gens, d)

    def _layout_for(self, gens, d):
        offs, n = [], 0
        for a in gens:
            offs.append(n)
            n += free_basis(self.R, self.A.gens, a + d).size
        return gens, offs, n

    def ambient(self, i, d):
        return self._layout(i, d)[2]

    def _apply(self, mat: GradedMatrix, d):
        """Matrix of u |-> u o mat, from sum_k F0(A)_{a_k+d} (a_k = mat.target) to columns of mat."""
        _, offs_t, n_t = self._layout_for(mat.target, d)
        _, offs_s, n_s = self._layout_for(mat.source, d)
        acc: dict = {}
        Agens = self.A.gens
        p = self.p
        for l, col in enumerate(mat.cols):
            b = mat.source[l]
            for k, t in col.items():
                blk = mult_matrix(self.R, Agens, t, mat.target[k] + d, b + d)
                for r, c, v in la.nonzeros(blk):
                    key = (offs_s[l] + r, offs_t[k] + c)
                    acc[key] = (acc.get(key, 0) + v) % p
        out = la.zeros(n_s, n_t, p)
        for (r, c), v in acc.items():
            if v:
                out[r, c] = v
        return out

    def relations(self, i, d):
        gens, offs, n = self._layout(i, d)
        blocks = []
        for a in gens:
            if self.A.pres.ncols:
                blocks.append(self.A.pres.block(a + d))
            else:
                blocks.append(la.zeros(free_basis(self.R, self.A.gens, a + d).size, 0, self.p))
        return _block_diag_mats(blocks, self.p)

    def subspace(self, i, d):
        key = ("V", i, d)
        if key in self._cache:
            return self._cache[key]
        m = self.X.obj(-i)
        n = self.ambient(i, d)
        if m.pres.ncols == 0:
            V = None
        else:
            E = self._apply(m.pres, d)  # U -> sum over relations
            n_s = self._layout_for(m.pres.source, d)[2]
            K = _block_diag_mats([self.A.pres.block(b + d) if self.A.pres.ncols else
                                  la.zeros(free_basis(self.R, self.A.gens, b + d).size, 0, self.p)
                                  for b in m.pres.source], self.p)
            big = la.hstack([E, K], n_s, self.p)
            ns = la.nullspace(big, self.p)
            V = la.colspace(la.select_rows(ns, list(range(n)), self.p), self.p)
        self._cache[key] = V
        return V

    def differential(self, i, d):
        # Hom(X_{-i}, A) -> Hom(X_{-i+1}, A) via composing with d_{-i+1}: X_{-i+1} -> X_{-i}
        return self._apply(self.X.diff(-i + 1), d)


def _block_diag_mats(blocks, p):
    r = sum(b.nrows() for b in blocks)
    c = sum(b.ncols() for b in blocks)
    out = la.zeros(r, c, p)
    ro = co = 0
    for b in blocks:
        for i, j, v in la.nonzeros(b):
            out[ro + i, co + j] = v
        ro += b.nrows()
        co += b.ncols()
    return out


class HomologySpace:
    """H = Z / B at one index and degree, with a basis of representatives."""

    def __init__(self, n: int, Z, B, p: int):
        self.n = n
        self.p = p
        self.Z = Z
        self.B = B
        keep = la.extend_basis(B, Z, p)
        self.reps = la.select_columns(Z, keep, p)
        self.dim = len(keep)
        self._basis = la.hstack([B, self.reps], n, p) if n else la.zeros(0, B.ncols() + self.dim, p)

    def coords(self, vecs):
        """Coordinates in the representative basis of cycle vectors (columns)."""
        if vecs.ncols() == 0:
            return la.zeros(self.dim, 0, self.p)
        if self.n == 0:
            return la.zeros(self.dim, vecs.ncols(), self.p)
        x = la.solve(self._basis, vecs, self.p)
        if x is None:
            raise ValueError("vector is not a cycle")
        nb = self.B.ncols()
        return la.select_rows(x, list(range(nb, nb + self.dim)), self.p)

    def contains_cycles(self, vecs) -> bool:
        if vecs.ncols() == 0 or self.n == 0:
            return True
        return la.in_span(self._basis, vecs)

    def is_boundary(self, vecs) -> bool:
        if vecs.ncols() == 0 or self.n == 0:
            return True
        if self.B.ncols() == 0:
            return la.is_zero(vecs)
        return la.in_span(self.B, vecs)


def homology_space(view: ComplexView, i: int, d: int) -> HomologySpace:
    p = view.p
    n = view.ambient(i, d)
    V = view.subspace(i, d)
    K = view.relations(i, d)
    if n == 0:
        z = la.zeros(0, 0, p)
        return HomologySpace(0, z, z, p)
    D = view.differential(i, d)
    n_out = view.ambient(i - 1, d)
    K_out = view.relations(i - 1, d)
    base = V if V is not None else la.identity(n, p)
    if n_out == 0:
        Z = base
    else:
        DV = la.mul(D, base, p)
        big = la.hstack([DV, K_out], n_out, p)
        ns = la.nullspace(big, p)
        coef = la.select_rows(ns, list(range(base.ncols())), p)
        Z = la.colspace(la.mul(base, coef, p), p)
    n_in = view.ambient(i + 1, d)
    parts = [K]
    if n_in:
        Din = view.differential(i + 1, d)
        Vin = view.subspace(i + 1, d)
        parts.append(la.mul(Din, Vin, p) if Vin is not None else Din)
    B = la.colspace(la.hstack(parts, n, p), p)
    return HomologySpace(n, Z, B, p)


@dataclass
class HomologyTable:
    """index -> {degree: dim} (only nonzero entries kept)."""
    data: dict = field(default_factory=dict)

    def vector(self, i: int) -> dict:
        return self.data.get(i, {})

    def total(self, i: int) -> int:
        return sum(self.data.get(i, {}).values())

    def totals(self) -> dict:
        return {i: self.total(i) for i in sorted(self.data)}

    def is_zero(self) -> bool:
        return all(not v for v in self.data.values())

    def to_json(self) -> dict:
        return {str(i): {str(d): n for d, n in sorted(v.items())} for i, v in sorted(self.data.items())}


def degree_range(view: ComplexView, indices: Iterable[int], window: Sequence[int]) -> list:
    lo = None
    for i in indices:
        for j in (i - 1, i, i + 1):
            m = view.min_degree(j)
            if m is not None:
                lo = m if lo is None else min(lo, m)
    return [d for d in window if lo is None or d >= lo]


def homology_dim(view: ComplexView, i: int, d: int, cycle_rank: int | None = None) -> int:
    """dim H_i in degree d by rank arithmetic alone (no bases are extracted)."""
    if isinstance(view, ModuleComplexView):
        n = view.ambient(i, d)
        if n == 0:
            return 0
        if view.ambient(i - 1, d) == 0:
            dim_z = n
        else:
            K_out = view.relations(i - 1, d)
            if cycle_rank is None:
                cycle_rank = la.rank(view.cycle_matrix(i).block(d))
            dim_z = n - cycle_rank + la.rank(K_out)
        return dim_z - la.rank(view.boundary_matrix(i).block(d))
    if view.subspace(i, d) is not None or view.subspace(i + 1, d) is not None:
        return homology_space(view, i, d).dim
    p = view.p
    n = view.ambient(i, d)
    if n == 0:
        return 0
    n_out = view.ambient(i - 1, d)
    if n_out == 0:
        dim_z = n
    else:
        K_out = view.relations(i - 1, d)
        D = view.differential(i, d)
        dim_z = n - la.rank(la.hstack([D, K_out], n_out, p)) + la.rank(K_out)
    parts = [view.relations(i, d)]
    if view.ambient(i + 1, d):
        parts.append(view.differential(i + 1, d))
    dim_b = la.rank(la.hstack(parts, n, p))
    return dim_z - dim_b


def homology_table(view: ComplexView, indices: Iterable[int], window: Sequence[int]) -> HomologyTable:
    indices = list(indices)
    degs = degree_range(view, indices, window) if isinstance(view, ModuleComplexView) else list(window)
    out = {}
    for i in indices:
        vec = {}
        for d in degs:
            h = homology_dim(view, i, d)
            if h:
                vec[d] = h
        out[i] = vec
    return HomologyTable(out)


def support_window(X: ChainComplex, indices: Iterable[int]) -> list:
    """Degrees outside of which X_j (j adjacent to indices) vanish; Artinian rings only."""
    R = X.ring
    top = R.top_degree()
    lo = hi = None
    for i in indices:
        for j in (i - 1, i, i + 1):
            g = X.obj(j).gens
            if g:
                lo = min(g) if lo is None else min(lo, min(g))
                hi = max(g) + top if hi is None else max(hi, max(g) + top)
    return [] if lo is None else list(range(lo, hi + 1))


def default_window(D: int = 20) -> list:
    return list(range(-D, D + 1))


# ---------------------------------------------------------------- Ext / Tor


def tor(M: GradedModule, N: GradedModule, i: int, window=None, resolve: str = "first") -> dict:
    """Graded dimension vector of Tor_i(M, N) on a degree window."""
    window = default_window() if window is None else window
    if resolve == "first":
        P = free_resolution(M, i + 1)
        X = tensor_complex(P, N)
    else:
        P = free_resolution(N, i + 1)
        X = tensor_left_complex(M, P)
    return homology_table(ModuleComplexView(X), [i], window).vector(i)


def tor_table(M: GradedModule, N: GradedModule, indices, window=None) -> HomologyTable:
    window = default_window() if window is None else window
    indices = list(indices)
    P = free_resolution(M, max(indices) + 1)
    return homology_table(ModuleComplexView(tensor_complex(P, N)), indices, window)


def ext(M: GradedModule, N: GradedModule, i: int, window=None) -> dict:
    """Graded dimension vector of Ext^i(M, N) on a degree window."""
    window = default_window() if window is None else window
    P = free_resolution(M, i + 1)
    H = hom_complex(P, N)
    return homology_table(ModuleComplexView(H), [-i], window).vector(-i)


def ext_table(M: GradedModule, N: GradedModule, indices, window=None) -> HomologyTable:
    window = default_window() if window is None else window
    indices = list(indices)
    P = free_resolution(M, max(indices) + 1)
    H = hom_complex(P, N)
    t = homology_table(ModuleComplexView(H), [-i for i in indices], window)
    return HomologyTable({i: t.vector(-i) for i in indices})


def homology_at(X: ChainComplex, i: int) -> GradedModule:
    """H_i(X) as a presented module (computed by syzygies, no degree window)."""
    return homology_module(X.map(i), X.map(i + 1))


def homology_witness(X: ChainComplex, i: int):
    """(degree, dim) of a nonzero graded piece of H_i(X), or None when H_i(X) = 0.

    Exact: H_i is a quotient of the cycles, whose generators live in degrees
    at most the Schreyer bound of [d_i | relations of X_{i-1}]; a nonzero H_i
    is nonzero in the degree of one of those generators. Only ranks are used.
    """
    src = X.obj(i)
    if src.ngens == 0:
        return None
    view = ModuleComplexView(X)
    A = view.cycle_matrix(i)
    sb = SchreyerBound(A)
    d = min(A.source)
    while d <= sb.beta:
        r = sb.observe(d)
        h = homology_dim(view, i, d, r)
        if h:
            return d, h
        d += 1
    return None


def homology_vanishes(X: ChainComplex, i: int) -> bool:
    return homology_witness(X, i) is None


def ext_module(M: GradedModule, N: GradedModule, i: int) -> GradedModule:
    P = free_resolution(M, i + 1)
    return homology_at(hom_complex(P, N), -i)


def tor_module(M: GradedModule, N: GradedModule, i: int) -> GradedModule:
    P = free_resolution(M, i + 1)
    return homology_at(tensor_complex(P, N), i)


def residue_field(R: GradedRing) -> GradedModule:
    return GradedModule.residue_field(R)


def depth(M: GradedModule) -> float:
    """min{i : Ext^i(k, M) != 0}; +inf for the zero module."""
    R = M.ring
    memo = R.cache("depth")
    key = M.pres
    if key in memo:
        return memo[key]
    if M.is_zero():
        return INF
    dim = R.krull_dim()
    k = residue_field(R)
    P = free_resolution(k, dim + 1)
    H = hom_complex(P, M)
    for i in range(dim + 1):
        if not homology_vanishes(H, -i):
            memo[key] = i
            return i
    raise RuntimeError("no nonvanishing Ext(k, M) up to dim R")


def bass_number(M: GradedModule, i: int) -> int:
    """dim_k Ext^i(k, M) (a module killed by m, so its minimal generator count)."""
    k = residue_field(M.ring)
    P = free_resolution(k, i + 1)
    E = homology_at(hom_complex(P, M), -i)
    return minimal_presentation(E).module.ngens


def finite_injective_dimension(M: GradedModule) -> bool:
    """Ext^{depth R + 1}(k, M) = 0."""
    R = M.ring
    d = depth(GradedModule.free(R))
    k = residue_field(R)
    P = free_resolution(k, d + 2)
    return homology_vanishes(hom_complex(P, M), -(d + 1))


def projective_dimension(M: GradedModule) -> float:
    """pd M via the minimal resolution; infinite if P_{depth R + 1} != 0."""
    R = M.ring
    if M.is_zero():
        return -INF
    d = depth(GradedModule.free(R))
    P = free_resolution(M, d + 1)
    if P.obj(d + 1).ngens:
        return INF
    return P.pd()
