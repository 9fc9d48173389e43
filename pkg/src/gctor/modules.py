"""Finitely generated graded modules given by presentations, and maps between them.

A module M = coker(F1 -> F0) is stored through its presentation matrix.
Everything is computed degreewise: a graded matrix between free modules
has, in each degree d, a finite matrix over F_p with respect to the
standard-monomial bases, and submodule questions are answered by exact
linear algebra in finitely many degrees.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .poly import Polynomial
from .ring import GradedRing


# ---------------------------------------------------------------- free modules


@dataclass(frozen=True)
class GradedFree:
    """F = sum_i R(-a_i); ``degrees[i]`` is the degree of the i-th basis element."""
    ring: GradedRing
    degrees: tuple

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def dim(self, d: int) -> int:
        return free_basis(self.ring, self.degrees, d).size


class FreeBasis:
    __slots__ = ("offsets", "size", "degrees", "d")

    def __init__(self, ring: GradedRing, degrees: tuple, d: int):
        self.degrees, self.d = degrees, d
        off, n = [], 0
        for a in degrees:
            off.append(n)
            n += len(ring.basis(d - a))
        self.offsets = off
        self.size = n


def free_basis(ring: GradedRing, degrees: tuple, d: int) -> FreeBasis:
    memo = ring.cache("free_basis")
    k = (degrees, d)
    fb = memo.get(k)
    if fb is None:
        fb = FreeBasis(ring, degrees, d)
        memo[k] = fb
    return fb


def basis_labels(ring: GradedRing, degrees: tuple, d: int) -> list:
    return [(i, m) for i, a in enumerate(degrees) for m in ring.basis(d - a)]


def col_to_vec(ring: GradedRing, degrees: tuple, col: dict, d: int) -> dict:
    """Coordinates (sparse dict) of a homogeneous column of degree d."""
    fb = free_basis(ring, degrees, d)
    out = {}
    for i, terms in col.items():
        idx = ring.index(d - degrees[i])
        off = fb.offsets[i]
        for m, c in terms.items():
            out[off + idx[m]] = c
    return out


def vec_to_col(ring: GradedRing, degrees: tuple, d: int, vec) -> dict:
    """Inverse of col_to_vec; vec is a dict or a list of coordinates."""
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    fb = free_basis(ring, degrees, d)
    out: dict = {}
    comp = 0
    offs = fb.offsets
    for k, v in sorted(items):
        v = int(v)
        if not v:
            continue
        while comp + 1 < len(offs) and offs[comp + 1] <= k:
            comp += 1
        m = ring.basis(d - degrees[comp])[k - offs[comp]]
        out.setdefault(comp, {})[m] = v
    return out


# ---------------------------------------------------------------- graded matrices


class GradedMatrix:
    """Homogeneous degree-0 map between graded free modules.

    ``cols[j]`` is a dict row -> term dict; entry (i, j) is homogeneous of
    degree source[j] - target[i] and stored in normal form.
    """

    def __init__(self, ring: GradedRing, source: Sequence[int], target: Sequence[int],
                 cols: Sequence[dict], check: bool = True):
        self.ring = ring
        self.source = tuple(source)
        self.target = tuple(target)
        self.cols = [dict((i, t) for i, t in c.items() if t) for c in cols]
        if len(self.cols) != len(self.source):
            raise ValueError("column count does not match source rank")
        self._blocks: dict = {}
        if check:
            mdeg = ring.S.mdeg
            for j, c in enumerate(self.cols):
                for i, t in c.items():
                    want = self.source[j] - self.target[i]
                    for m in t:
                        if mdeg(m) != want:
                            raise ValueError(
                                f"entry ({i},{j}) has degree {mdeg(m)}, expected {want}")

    # construction helpers
    @classmethod
    def from_polys(cls, ring: GradedRing, source, target, rows: Sequence[Sequence]) -> "GradedMatrix":
        """Build from a row-major table of Polynomials (or strings, or ints)."""
        ncol = len(source)
        cols = [dict() for _ in range(ncol)]
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                if isinstance(e, str):
                    e = ring.parse(e)
                elif isinstance(e, int):
                    e = ring.S.const(e)
                else:
                    e = ring.reduce(e)
                if e.terms:
                    cols[j][i] = dict(e.terms)
        return cls(ring, source, target, cols)

    @classmethod
    def identity(cls, ring: GradedRing, degrees) -> "GradedMatrix":
        one = ring.S.one_mono
        return cls(ring, degrees, degrees, [{i: {one: 1}} for i in range(len(degrees))], check=False)

    @classmethod
    def zero(cls, ring: GradedRing, source, target) -> "GradedMatrix":
        return cls(ring, source, target, [dict() for _ in source], check=False)

    @property
    def nrows(self) -> int:
        return len(self.target)

    @property
    def ncols(self) -> int:
        return len(self.source)

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial(self.ring.S, dict(self.cols[j].get(i, {})))

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix) and self.source == other.source
                and self.target == other.target and self.cols == other.cols)

    def __hash__(self):
        return hash((self.source, self.target,
                     tuple(tuple(sorted((i, tuple(sorted(t.items()))) for i, t in c.items()))
                           for c in self.cols)))

    def __repr__(self):
        rows = []
        for i in range(self.nrows):
            rows.append("[" + ", ".join(str(self.entry(i, j)) for j in range(self.ncols)) + "]")
        return f"GradedMatrix({self.target} <- {self.source})\n" + "\n".join(rows)

    # degreewise
    def block(self, d: int) -> la.Mat:
        """Matrix of the degree-d component in standard-monomial bases."""
        b = self._blocks.get(d)
        if b is not None:
            return b
        R = self.ring
        tb = free_basis(R, self.target, d)
        sb = free_basis(R, self.source, d)
        acc: dict = {}
        p = R.p
        nf = R.nf_mono
        for j, col in enumerate(self.cols):
            if not col:
                continue
            mons = R.basis(d - self.source[j])
            if not mons:
                continue
            off = sb.offsets[j]
            rows = [(tb.offsets[i], R.index(d - self.target[i]), terms) for i, terms in col.items()]
            for si, s in enumerate(mons):
                cj = off + si
                for toff, idx, terms in rows:
                    for m, c in terms.items():
                        mm = tuple(x + y for x, y in zip(s, m))
                        for t, c2 in nf(mm).items():
                            k = (toff + idx[t], cj)
                            acc[k] = (acc.get(k, 0) + c * c2) % p
        mat = la.zeros(tb.size, sb.size, p)
        for (i, j), v in acc.items():
            if v:
                mat[i, j] = v
        self._blocks[d] = mat
        return mat

    def column_vector(self, j: int, d: int | None = None) -> dict:
        """Coordinates of column j in degree source[j] (or d, for shifted use)."""
        return col_to_vec(self.ring, self.target, self.cols[j], self.source[j] if d is None else d)

    def columns_block(self, idx: Sequence[int], d: int) -> la.Mat:
        """Columns idx (all of degree d) as a coordinate matrix."""
        n = free_basis(self.ring, self.target, d).size
        return la.from_columns([self.column_vector(j) for j in idx], n, self.ring.p)

    # algebra
    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self o other."""
        if other.target != self.source:
            raise ValueError("incompatible composition")
        R = self.ring
        p = R.p
        cols = []
        for c in other.cols:
            out: dict = {}
            for k, t in c.items():
                for i, t2 in self.cols[k].items():
                    prod = R.mul_terms(t2, t)
                    if not prod:
                        continue
                    cur = out.setdefault(i, {})
                    for m, v in prod.items():
                        w = (cur.get(m, 0) + v) % p
                        if w:
                            cur[m] = w
                        else:
                            cur.pop(m)
            cols.append({i: t for i, t in out.items() if t})
        return GradedMatrix(R, other.source, self.target, cols, check=False)

    __matmul__ = compose

    def scale(self, c: int) -> "GradedMatrix":
        p = self.ring.p
        c %= p
        if c == 0:
            return GradedMatrix.zero(self.ring, self.source, self.target)
        cols = [{i: {m: v * c % p for m, v in t.items()} for i, t in col.items()} for col in self.cols]
        return GradedMatrix(self.ring, self.source, self.target, cols, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if other.source != self.source or other.target != self.target:
            raise ValueError("shape mismatch")
        p = self.ring.p
        cols = []
        for a, b in zip(self.cols, other.cols):
            out = {i: dict(t) for i, t in a.items()}
            for i, t in b.items():
                cur = out.setdefault(i, {})
                for m, v in t.items():
                    w = (cur.get(m, 0) + v) % p
                    if w:
                        cur[m] = w
                    else:
                        cur.pop(m)
            cols.append(out)
        return GradedMatrix(self.ring, self.source, self.target, cols, check=False)

    def __sub__(self, other):
        return self + (-other)

    def transpose(self) -> "GradedMatrix":
        src = tuple(-a for a in self.target)
        tgt = tuple(-a for a in self.source)
        cols = [dict() for _ in src]
        for j, c in enumerate(self.cols):
            for i, t in c.items():
                cols[i][j] = dict(t)
        return GradedMatrix(self.ring, src, tgt, cols, check=False)

    def select_columns(self, idx: Sequence[int]) -> "GradedMatrix":
        return GradedMatrix(self.ring, [self.source[j] for j in idx], self.target,
                            [self.cols[j] for j in idx], check=False)

    def select_rows(self, idx: Sequence[int]) -> "GradedMatrix":
        pos = {i: k for k, i in enumerate(idx)}
        cols = [{pos[i]: t for i, t in c.items() if i in pos} for c in self.cols]
        return GradedMatrix(self.ring, self.source, [self.target[i] for i in idx], cols, check=False)

    def permute_source(self, perm: Sequence[int]) -> "GradedMatrix":
        return self.select_columns(perm)

    def shift(self, e: int) -> "GradedMatrix":
        """Same entries with all source and target degrees raised by e."""
        return GradedMatrix(self.ring, [a + e for a in self.source], [a + e for a in self.target],
                            self.cols, check=False)


def hstack(mats: Sequence[GradedMatrix], target=None) -> GradedMatrix:
    ring = mats[0].ring if mats else None
    tgt = mats[0].target if target is None else tuple(target)
    src, cols = [], []
    for m in mats:
        if m.target != tgt:
            raise ValueError("target mismatch in hstack")
        src.extend(m.source)
        cols.extend(m.cols)
    return GradedMatrix(ring, src, tgt, cols, check=False)


def vstack(mats: Sequence[GradedMatrix]) -> GradedMatrix:
    src = mats[0].source
    tgt, cols = [], [dict() for _ in src]
    off = 0
    for m in mats:
        if m.source != src:
            raise ValueError("source mismatch in vstack")
        tgt.extend(m.target)
        for j, c in enumerate(m.cols):
            for i, t in c.items():
                cols[j][i + off] = t
        off += m.nrows
    return GradedMatrix(mats[0].ring, src, tgt, cols, check=False)


def block_diag(mats: Sequence[GradedMatrix], ring: GradedRing | None = None) -> GradedMatrix:
    src, tgt, cols = [], [], []
    off = 0
    for m in mats:
        src.extend(m.source)
        tgt.extend(m.target)
        for c in m.cols:
            cols.append({i + off: t for i, t in c.items()})
        off += m.nrows
    r = ring if ring is not None else mats[0].ring
    return GradedMatrix(r, src, tgt, cols, check=False)


def kron_identity_right(a: GradedMatrix, degs: Sequence[int]) -> GradedMatrix:
    """a (x) id on sum R(-c): rows/cols indexed (i, k) with k fastest."""
    n = len(degs)
    src = [s + c for s in a.source for c in degs]
    tgt = [t + c for t in a.target for c in degs]
    cols = []
    for col in a.cols:
        for k in range(n):
            cols.append({i * n + k: t for i, t in col.items()})
    return GradedMatrix(a.ring, src, tgt, cols, check=False)


def kron_identity_left(degs: Sequence[int], b: GradedMatrix) -> GradedMatrix:
    """id on sum R(-a) (x) b with the first factor's index slowest."""
    n = b.nrows
    src = [a + s for a in degs for s in b.source]
    tgt = [a + t for a in degs for t in b.target]
    cols = []
    for k in range(len(degs)):
        for col in b.cols:
            cols.append({k * n + i: t for i, t in col.items()})
    return GradedMatrix(b.ring, src, tgt, cols, check=False)


def mult_matrix(ring: GradedRing, degrees: tuple, terms: dict, a: int, c: int) -> la.Mat:
    """Multiplication by a homogeneous element (degree c - a) from F_a to F_c."""
    fa = free_basis(ring, degrees, a)
    fc = free_basis(ring, degrees, c)
    mat = la.zeros(fc.size, fa.size, ring.p)
    p = ring.p
    for i, deg in enumerate(degrees):
        src = ring.basis(a - deg)
        idx = ring.index(c - deg)
        for si, s in enumerate(src):
            acc: dict = {}
            for m, v in terms.items():
                mm = tuple(x + y for x, y in zip(s, m))
                for t, v2 in ring.nf_mono(mm).items():
                    acc[t] = (acc.get(t, 0) + v * v2) % p
            for t, v in acc.items():
                if v:
                    mat[fc.offsets[i] + idx[t], fa.offsets[i] + si] = v
    return mat


# ---------------------------------------------------------------- kernels over R


def _divides_any(lts: list, m) -> bool:
    return any(all(x <= y for x, y in zip(a, m)) for a in lts)


class SchreyerBound:
    """Degree bound for the generators of ker(A), refined while sweeping degrees upward.

    In each degree the leading terms of im(A) + I*G are read off an echelon
    form. Beyond the largest degree of an S-pair among the minimal leading
    terms (and of the columns of A) Schreyer's theorem produces no new
    syzygies.
    """

    def __init__(self, A: GradedMatrix):
        self.A = A
        self.R = A.ring
        self.lts: dict = {i: [] for i in range(len(A.target))}
        self.beta = max(A.source) if A.source else None

    def observe(self, d: int, Ad=None) -> int:
        """Record the leading terms of the image in degree d; returns its rank."""
        R, tgt = self.R, self.A.target
        Ad = self.A.block(d) if Ad is None else Ad
        if not (Ad.nrows() and Ad.ncols()):
            return 0
        _, piv = la.rref_pivots(la.transpose(Ad, R.p))
        labels = None
        for k in piv:
            if labels is None:
                labels = basis_labels(R, tgt, d)
            i, m = labels[k]
            lts = self.lts[i]
            if not _divides_any(lts, m):
                for m2 in lts + list(R._lts):
                    l = tuple(max(x, y) for x, y in zip(m, m2))
                    self.beta = max(self.beta, R.S.mdeg(l) + tgt[i])
                lts.append(m)
        return len(piv)


def syzygy(A: GradedMatrix, progress=None) -> GradedMatrix:
    """Minimal generators of ker(A: F -> G) over R, as columns of a matrix into F.

    Degrees are swept upward up to the bound maintained by SchreyerBound;
    kernel elements not generated by earlier ones become new generators.
    """
    R = A.ring
    p = R.p
    if A.ncols == 0:
        return GradedMatrix(R, (), A.source, [])
    if A.is_zero():
        return GradedMatrix.identity(R, A.source)
    sb = SchreyerBound(A)
    d = min(A.source)
    found_src: list = []
    found_cols: list = []
    while d <= sb.beta:
        Ad = A.block(d)
        if Ad.ncols():
            sb.observe(d, Ad)
            N = la.nullspace(Ad, p)
            if N.ncols():
                if found_cols:
                    prev = GradedMatrix(R, found_src, A.source, found_cols, check=False)
                    G = prev.block(d)
                    new = la.extend_basis(G, N, p) if G.ncols() else la.pivot_columns(N)
                else:
                    new = list(range(N.ncols()))
                if new:
                    cols = la.columns(la.select_columns(N, new, p))
                    for v in cols:
                        found_src.append(d)
                        found_cols.append(vec_to_col(R, A.source, d, v))
        if progress:
            progress("syzygy", d, sb.beta)
        d += 1
    return GradedMatrix(R, found_src, A.source, found_cols, check=False)


def minimal_columns(A: GradedMatrix, rel: GradedMatrix | None = None) -> list[int]:
    """Indices of columns of A minimally generating (im A + im rel) / im rel."""
    R, p = A.ring, A.ring.p
    order = sorted(range(A.ncols), key=lambda j: A.source[j])
    kept: list = []
    pos = 0
    while pos < len(order):
        d = A.source[order[pos]]
        same = []
        while pos < len(order) and A.source[order[pos]] == d:
            same.append(order[pos])
            pos += 1
        n = free_basis(R, A.target, d).size
        span = []
        if rel is not None and rel.ncols:
            span.append(rel.block(d))
        if kept:
            span.append(A.select_columns(kept).block(d))
        S = la.hstack(span, n, p) if span else la.zeros(n, 0, p)
        cand = A.columns_block(same, d)
        for k in la.extend_basis(S, cand, p):
            kept.append(same[k])
    return sorted(kept)


# ---------------------------------------------------------------- modules


class GradedModule:
    """M = coker(pres: F1 -> F0); generator i of M has degree pres.target[i]."""

    def __init__(self, pres: GradedMatrix, name: str | None = None):
        self.pres = pres
        self.ring = pres.ring
        self.name = name

    @classmethod
    def free(cls, ring: GradedRing, degrees=(0,)) -> "GradedModule":
        return cls(GradedMatrix(ring, (), degrees, []))

    @classmethod
    def cyclic(cls, ring: GradedRing, ideal: Sequence, degree: int = 0) -> "GradedModule":
        """R(-degree) / (ideal)."""
        polys = [ring.parse(f) if isinstance(f, str) else ring.reduce(f) for f in ideal]
        polys = [f for f in polys if f.terms]
        src = [degree + f.degree() for f in polys]
        return cls(GradedMatrix.from_polys(ring, src, (degree,), [polys]))

    @classmethod
    def residue_field(cls, ring: GradedRing, degree: int = 0) -> "GradedModule":
        return cls.cyclic(ring, ring.S.gens(), degree)

    @property
    def gens(self) -> tuple:
        return self.pres.target

    @property
    def ngens(self) -> int:
        return len(self.pres.target)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"{label}coker {self.pres.target} <- {self.pres.source}"

    def __eq__(self, other):
        return isinstance(other, GradedModule) and self.pres == other.pres

    def __hash__(self):
        return hash(self.pres)

    def free_dim(self, d: int) -> int:
        return free_basis(self.ring, self.gens, d).size

    def hilbert(self, d: int) -> int:
        return self.free_dim(d) - la.rank(self.pres.block(d))

    def dims(self, window) -> dict:
        return {d: self.hilbert(d) for d in window}

    def is_free(self) -> bool:
        return self.pres.is_zero()

    def is_zero(self) -> bool:
        """Every generator lies in the relation module (checked in its own degree)."""
        if self.ngens == 0:
            return True
        by_deg: dict = {}
        for i, a in enumerate(self.gens):
            by_deg.setdefault(a, []).append(i)
        one = self.ring.S.one_mono
        for a, idx in by_deg.items():
            fb = free_basis(self.ring, self.gens, a)
            cols = [col_to_vec(self.ring, self.gens, {i: {one: 1}}, a) for i in idx]
            B = la.from_columns(cols, fb.size, self.ring.p)
            if not la.in_span(self.pres.block(a), B):
                return False
        return True

    def twist(self, e: int) -> "GradedModule":
        """M(e): generators move from degree a to a - e."""
        return GradedModule(self.pres.shift(-e))


def in_submodule(vectors: GradedMatrix, rel: GradedMatrix) -> bool:
    """Do all columns of vectors lie in the column module of rel?"""
    by_deg: dict = {}
    for j, a in enumerate(vectors.source):
        if vectors.cols[j]:
            by_deg.setdefault(a, []).append(j)
    for a, idx in by_deg.items():
        B = vectors.columns_block(idx, a)
        if la.is_zero(B):
            continue
        if rel.ncols == 0 or not la.in_span(rel.block(a), B):
            return False
    return True


def direct_sum(mods: Sequence[GradedModule]) -> GradedModule:
    if not mods:
        raise ValueError("empty direct sum")
    return GradedModule(block_diag([m.pres for m in mods], mods[0].ring))


def zero_module(ring: GradedRing) -> GradedModule:
    return GradedModule(GradedMatrix(ring, (), (), []))


# ---------------------------------------------------------------- maps


class ModuleMap:
    """Degree-0 homomorphism given by a lift F0(source) -> F0(target)."""

    def __init__(self, source: GradedModule, target: GradedModule, lift: GradedMatrix,
                 check: bool = True):
        if lift.source != source.gens or lift.target != target.gens:
            raise ValueError("lift does not match generator degrees")
        self.source, self.target, self.lift = source, target, lift
        if check and source.pres.ncols and not in_submodule(lift @ source.pres, target.pres):
            raise ValueError("lift does not respect the presentations")

    @classmethod
    def identity(cls, M: GradedModule) -> "ModuleMap":
        return cls(M, M, GradedMatrix.identity(M.ring, M.gens), check=False)

    @classmethod
    def zero(cls, M: GradedModule, N: GradedModule) -> "ModuleMap":
        return cls(M, N, GradedMatrix.zero(M.ring, M.gens, N.gens), check=False)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self o other."""
        return ModuleMap(other.source, self.target, self.lift @ other.lift, check=False)

    __matmul__ = compose

    def __add__(self, other):
        return ModuleMap(self.source, self.target, self.lift + other.lift, check=False)

    def __neg__(self):
        return ModuleMap(self.source, self.target, -self.lift, check=False)

    def block(self, d: int) -> la.Mat:
        return self.lift.block(d)

    def is_zero(self) -> bool:
        return in_submodule(self.lift, self.target.pres)

    def is_injective(self) -> bool:
        return kernel(self)[0].is_zero()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_zero()

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def __repr__(self):
        return f"ModuleMap({self.source} -> {self.target})"


# ---------------------------------------------------------------- solving for maps


def lift_through(post: GradedMatrix, rhs: GradedMatrix, rel: GradedMatrix | None = None
                 ) -> GradedMatrix | None:
    """X with post o X = rhs modulo the columns of rel, or None if impossible."""
    R, p = post.ring, post.ring.p
    cols: list = [dict() for _ in rhs.source]
    by_deg: dict = {}
    for j, a in enumerate(rhs.source):
        by_deg.setdefault(a, []).append(j)
    for c, idx in by_deg.items():
        Pc = post.block(c)
        ncoef = Pc.ncols()
        n = free_basis(R, post.target, c).size
        A = Pc if rel is None or rel.ncols == 0 else la.hstack([Pc, rel.block(c)], n, p)
        B = rhs.columns_block(idx, c)
        X = la.solve(A, B, p)
        if X is None:
            return None
        for k, j in enumerate(idx):
            v = {i: int(X[i, k]) for i in range(ncoef) if int(X[i, k])}
            cols[j] = vec_to_col(R, post.source, c, v)
    return GradedMatrix(R, rhs.source, post.source, cols, check=False)


@dataclass
class Constraint:
    """post o H o pre == rhs modulo rel (rhs None means zero)."""
    pre: GradedMatrix
    post: GradedMatrix
    rel: GradedMatrix | None
    rhs: GradedMatrix | None = None


def find_map(source: GradedModule, target: GradedModule, constraints: Sequence[Constraint] = (),
             well_defined: bool = True) -> GradedMatrix | None:
    """Solve for a lift H: F0(source) -> F0(target) subject to linear constraints."""
    R, p = source.ring, source.ring.p
    A0, B0 = source.gens, target.gens
    cons = list(constraints)
    if well_defined and source.pres.ncols:
        cons.append(Constraint(source.pres, GradedMatrix.identity(R, B0), target.pres, None))
    # unknown layout
    var_off, nvar = [], 0
    for a in A0:
        var_off.append(nvar)
        nvar += free_basis(R, B0, a).size
    eq_rows: list = []  # list of (dict col->val) per row, plus rhs value
    rhs_vals: list = []
    slack_cols: list = []  # (row offset, matrix)
    nslack = 0
    mult_cache: dict = {}
    for con in cons:
        pre, post = con.pre, con.post
        W0 = post.target
        for z, c in enumerate(pre.source):
            nW = free_basis(R, W0, c).size
            if nW == 0:
                continue
            base = len(rhs_vals)
            rows = [dict() for _ in range(nW)]
            for k, terms in pre.cols[z].items():
                a = A0[k]
                key = (id(post), tuple(sorted(terms.items())), a, c)
                blk = mult_cache.get(key)
                if blk is None:
                    Mp = mult_matrix(R, B0, terms, a, c)
                    blk = la.mul(post.block(c), Mp, p)
                    mult_cache[key] = blk
                for i, jj, v in la.nonzeros(blk):
                    col = var_off[k] + jj
                    rows[i][col] = (rows[i].get(col, 0) + v) % p
            eq_rows.extend(rows)
            rv = [0] * nW
            if con.rhs is not None:
                for i, v in col_to_vec(R, W0, con.rhs.cols[z], c).items():
                    rv[i] = v
            rhs_vals.extend(rv)
            if con.rel is not None and con.rel.ncols:
                blk = con.rel.block(c)
                if blk.ncols():
                    slack_cols.append((base, blk))
                    nslack += blk.ncols()
    nrow = len(rhs_vals)
    if nrow == 0:
        return GradedMatrix.zero(R, A0, B0)
    ntot = nvar + nslack
    M = la.zeros(nrow, ntot + 1, p)
    for i, row in enumerate(eq_rows):
        for j, v in row.items():
            if v:
                M[i, j] = v
    off = nvar
    for base, blk in slack_cols:
        for i, j, v in la.nonzeros(blk):
            M[base + i, off + j] = (p - v) % p
        off += blk.ncols()
    for i, v in enumerate(rhs_vals):
        if v:
            M[i, ntot] = v
    r, piv = la.rref_pivots(M)
    if ntot in piv:
        return None
    x = [0] * nvar
    for i, j in enumerate(piv):
        if j < nvar:
            x[j] = int(r[i, ntot])
    cols = []
    for k, a in enumerate(A0):
        size = free_basis(R, B0, a).size
        cols.append(vec_to_col(R, B0, a, x[var_off[k]:var_off[k] + size]))
    return GradedMatrix(R, A0, B0, cols, check=False)


# ---------------------------------------------------------------- presentations


@dataclass
class Presented:
    """A module together with comparison lifts to and from another presentation."""
    module: GradedModule
    to_new: GradedMatrix    # F0(old) -> F0(new)
    to_old: GradedMatrix    # F0(new) -> F0(old)


def prune_generators(M: GradedModule) -> Presented:
    """Remove generators killed by a relation with a unit entry."""
    R, p = M.ring, M.ring.p
    gens = list(M.gens)
    one = R.S.one_mono
    cols = [dict((i, dict(t)) for i, t in c.items()) for c in M.pres.cols]
    csrc = list(M.pres.source)
    alive = list(range(len(gens)))  # positions of current gens among old
    # expression of each old generator in terms of current gens (row labels = old indices)
    expr = [{i: {one: 1}} for i in range(len(gens))]
    while True:
        hit = None
        for j, c in enumerate(cols):
            for i, t in c.items():
                if one in t:
                    hit = (i, j, t[one])
                    break
            if hit:
                break
        if hit is None:
            break
        i, j, c0 = hit
        inv = R.S.field.inv(c0)
        piv = cols[j]
        # e_i = -inv * sum_{k != i} piv[k] e_k
        sub = {k: {m: (-v * inv) % p for m, v in t.items()} for k, t in piv.items() if k != i}
        newcols = []
        for jj, c in enumerate(cols):
            if jj == j:
                continue
            if i in c:
                f = c.pop(i)
                for k, t in sub.items():
                    prod = R.mul_terms(f, t)
                    cur = c.setdefault(k, {})
                    for m, v in prod.items():
                        w = (cur.get(m, 0) + v) % p
                        if w:
                            cur[m] = w
                        else:
                            cur.pop(m)
                    if not cur:
                        c.pop(k)
            newcols.append(c)
        csrc.pop(j)
        cols = newcols
        for e in expr:
            if i in e:
                f = e.pop(i)
                for k, t in sub.items():
                    prod = R.mul_terms(f, t)
                    cur = e.setdefault(k, {})
                    for m, v in prod.items():
                        w = (cur.get(m, 0) + v) % p
                        if w:
                            cur[m] = w
                        else:
                            cur.pop(m)
                    if not cur:
                        e.pop(k)
        alive.remove(i)
    pos = {i: k for k, i in enumerate(alive)}
    new_gens = [gens[i] for i in alive]
    pres = GradedMatrix(R, csrc, new_gens, [{pos[i]: t for i, t in c.items()} for c in cols], check=False)
    to_new = GradedMatrix(R, gens, new_gens, [{pos[i]: t for i, t in e.items()} for e in expr], check=False)
    to_old = GradedMatrix(R, new_gens, gens, [{i: {one: 1}} for i in alive], check=False)
    return Presented(GradedModule(pres, M.name), to_new, to_old)


def minimal_presentation(M: GradedModule) -> Presented:
    """Minimal generators and minimal relations, with comparison lifts."""
    pr = prune_generators(M)
    pres = pr.module.pres
    keep = minimal_columns(pres) if pres.ncols else []
    pres = pres.select_columns(keep)
    return Presented(GradedModule(pres, M.name), pr.to_new, pr.to_old)


def minimize(M: GradedModule) -> GradedModule:
    return minimal_presentation(M).module


def _submodule_quotient(G: GradedMatrix, rel: GradedMatrix) -> tuple[GradedModule, GradedMatrix]:
    """(im G + im rel)/im rel, presented on a minimal subset of the columns of G.

    Returns the module and the matrix of its generators inside F0.
    """
    R = G.ring
    keep = minimal_columns(G, rel)
    G = G.select_columns(keep)
    if G.ncols == 0:
        return zero_module(R), G
    S = syzygy(hstack([G, rel], G.target)) if rel.ncols else syzygy(G)
    top = S.select_rows(list(range(G.ncols)))
    pres = GradedMatrix(R, top.source, G.source, top.cols, check=False)
    Q = GradedModule(pres)
    pr = minimal_presentation(Q)
    gens = G @ pr.to_old
    return pr.module, gens


def kernel(f: ModuleMap) -> tuple[GradedModule, ModuleMap]:
    """ker f with its inclusion into f.source."""
    M, N = f.source, f.target
    R = M.ring
    if M.ngens == 0:
        return zero_module(R), ModuleMap.zero(zero_module(R), M)
    big = hstack([f.lift, N.pres], N.gens) if N.pres.ncols else f.lift
    S = syzygy(big)
    G = S.select_rows(list(range(M.ngens)))
    G = GradedMatrix(R, G.source, M.gens, G.cols, check=False)
    K, gens = _submodule_quotient(G, M.pres)
    return K, ModuleMap(K, M, gens, check=False)


def cokernel(f: ModuleMap) -> tuple[GradedModule, ModuleMap]:
    N = f.target
    pres = hstack([N.pres, f.lift], N.gens)
    pr = minimal_presentation(GradedModule(pres))
    return pr.module, ModuleMap(N, pr.module, pr.to_new, check=False)


def image(f: ModuleMap) -> tuple[GradedModule, ModuleMap]:
    N = f.target
    Im, gens = _submodule_quotient(f.lift, N.pres)
    return Im, ModuleMap(Im, N, gens, check=False)


def homology_module(g: ModuleMap, f: ModuleMap) -> GradedModule:
    """ker g / im f for composable maps with g o f = 0."""
    B = g.source
    K, inc = kernel(g)
    if K.ngens == 0:
        return K
    rel = hstack([B.pres, f.lift], B.gens) if f.source.ngens else B.pres
    Q, _ = _submodule_quotient(inc.lift, rel)
    return Q


def submodule_generated(M: GradedModule, G: GradedMatrix) -> tuple[GradedModule, ModuleMap]:
    """The submodule of M generated by the columns of G (elements of F0(M))."""
    S, gens = _submodule_quotient(G, M.pres)
    return S, ModuleMap(S, M, gens, check=False)


# ---------------------------------------------------------------- Hom and tensor


@dataclass
class HomModule:
    """Hom_R(M, N) with each generator recorded as a lift F0(M)(shifted) -> F0(N).

    ``gen_maps[l]`` has source degrees M.gens + deg(l), i.e. it is a
    degree-0 map M(-deg l) -> N.
    """
    module: GradedModule
    source: GradedModule
    target: GradedModule
    gen_maps: list
    ambient_rel: GradedMatrix    # relations of sum_j N(a_j)
    ambient_gens: GradedMatrix   # generators of Hom inside sum_j F0(N)(a_j)

    def as_map(self, l: int) -> ModuleMap:
        e = self.module.gens[l]
        return ModuleMap(self.source.twist(-e), self.target, self.gen_maps[l], check=False)

    def ambient_column(self, lift: GradedMatrix, e: int) -> dict:
        """Stack a lift of a degree-e homomorphism into one column of the ambient module."""
        nN = self.target.ngens
        col = {}
        for j, c in enumerate(lift.cols):
            for i, t in c.items():
                col[j * nN + i] = t
        return col

    def coordinates(self, lift: GradedMatrix, e: int = 0) -> GradedMatrix | None:
        """Express a degree-e homomorphism (given by its lift) in the generators.

        Returns a one-column matrix (source degree e) into F0(Hom), or None if
        the lift does not define an element.
        """
        R = self.module.ring
        tgt = self.ambient_gens.target
        rhs = GradedMatrix(R, (e,), tgt, [self.ambient_column(lift, e)], check=False)
        return lift_through(self.ambient_gens, rhs, self.ambient_rel)


def hom_module(M: GradedModule, N: GradedModule) -> HomModule:
    """Hom_R(M, N) as the kernel of sum_j N(a_j) -> sum_l N(b_l) induced by pres(M)."""
    R = M.ring
    a, b, c = M.gens, M.pres.source, N.gens
    nN = len(c)
    amb_gens = [ci - aj for aj in a for ci in c]
    amb_rel = block_diag([N.pres.shift(-aj) for aj in a], R) if a else GradedMatrix(R, (), (), [])
    amb = GradedModule(GradedMatrix(R, amb_rel.source, amb_gens, amb_rel.cols, check=False))
    tgt_gens = [ci - bl for bl in b for ci in c]
    tgt_rel = block_diag([N.pres.shift(-bl) for bl in b], R) if b else GradedMatrix(R, (), (), [])
    tgt = GradedModule(GradedMatrix(R, tgt_rel.source, tgt_gens, tgt_rel.cols, check=False))
    cols = []
    for j in range(len(a)):
        for i in range(nN):
            col = {}
            for l in range(len(b)):
                t = M.pres.cols[l].get(j)
                if t:
                    col[l * nN + i] = t
            cols.append(col)
    phi = ModuleMap(amb, tgt, GradedMatrix(R, amb_gens, tgt_gens, cols, check=False), check=False)
    if not a:
        H = zero_module(R)
        gens = GradedMatrix(R, (), amb_gens, [])
    elif not b:
        pr = minimal_presentation(amb)
        H, gens = pr.module, pr.to_old
    else:
        H, inc = kernel(phi)
        gens = inc.lift
    gen_maps = []
    for l, e in enumerate(H.gens):
        col = gens.cols[l]
        mcols = [dict() for _ in a]
        for k, t in col.items():
            j, i = divmod(k, nN)
            mcols[j][i] = t
        gen_maps.append(GradedMatrix(R, [aj + e for aj in a], c, mcols, check=False))
    amb_gens_mat = GradedMatrix(R, H.gens, amb_gens, gens.cols, check=False)
    return HomModule(H, M, N, gen_maps, amb_rel, amb_gens_mat)


def tensor_module(M: GradedModule, N: GradedModule) -> GradedModule:
    """M (x) N presented on generator pairs (i, j), j fastest."""
    rel1 = kron_identity_right(M.pres, N.gens)
    rel2 = kron_identity_left(M.gens, N.pres)
    pres = hstack([rel1, rel2], [a + c for a in M.gens for c in N.gens])
    return GradedModule(pres)


def tensor_map(f: ModuleMap, N: GradedModule) -> ModuleMap:
    """f (x) id_N between the pair presentations of tensor_module."""
    lift = kron_identity_right(f.lift, N.gens)
    return ModuleMap(tensor_module(f.source, N), tensor_module(f.target, N), lift, check=False)


def tensor_map_left(M: GradedModule, g: ModuleMap) -> ModuleMap:
    """id_M (x) g."""
    lift = kron_identity_left(M.gens, g.lift)
    return ModuleMap(tensor_module(M, g.source), tensor_module(M, g.target), lift, check=False)


def dual_wrt(M: GradedModule, C: GradedModule) -> HomModule:
    """M^dagger = Hom_R(M, C)."""
    return hom_module(M, C)


def pushout(f: ModuleMap, g: ModuleMap) -> tuple[GradedModule, ModuleMap, ModuleMap]:
    """Pushout of B <-f- A -g-> D: coker(A -> B + D, x -> (f x, -g x))."""
    B, D = f.target, g.target
    R = B.ring
    col_map = vstack([f.lift, -g.lift])
    gens = tuple(B.gens) + tuple(D.gens)
    rel = hstack([block_diag([B.pres, D.pres], R), GradedMatrix(R, col_map.source, gens, col_map.cols, check=False)], gens)
    P = GradedModule(rel)
    nB = B.ngens
    one = R.S.one_mono
    iB = GradedMatrix(R, B.gens, gens, [{i: {one: 1}} for i in range(nB)], check=False)
    iD = GradedMatrix(R, D.gens, gens, [{nB + i: {one: 1}} for i in range(D.ngens)], check=False)
    return P, ModuleMap(B, P, iB, check=False), ModuleMap(D, P, iD, check=False)


def pullback(f: ModuleMap, g: ModuleMap) -> tuple[GradedModule, ModuleMap, ModuleMap]:
    """Pullback of B -f-> D <-g- E as ker(B + E -> D, (b, e) -> f b - g e)."""
    B, E, D = f.source, g.source, f.target
    R = B.ring
    S = direct_sum([B, E])
    lift = hstack([f.lift, -g.lift], D.gens)
    lift = GradedMatrix(R, S.gens, D.gens, lift.cols, check=False)
    K, inc = kernel(ModuleMap(S, D, lift, check=False))
    nB = B.ngens
    pB = inc.lift.select_rows(list(range(nB)))
    pE = inc.lift.select_rows(list(range(nB, nB + E.ngens)))
    return K, ModuleMap(K, B, pB, check=False), ModuleMap(K, E, pE, check=False)


def natural_map_mu(X: GradedModule, C: GradedModule) -> tuple[ModuleMap, HomModule]:
    """X -> Hom(C, X (x) C), x |-> (c |-> x (x) c)."""
    XC = tensor_module(X, C)
    H = hom_module(C, XC)
    R = X.ring
    one = R.S.one_mono
    nC = C.ngens
    cols = []
    for i, a in enumerate(X.gens):
        # the homomorphism e_k (of C) |-> e_i (x) e_k, of degree a
        mcols = [{i * nC + k: {one: 1}} for k in range(nC)]
        lift = GradedMatrix(R, [c + a for c in C.gens], XC.gens, mcols, check=False)
        v = H.coordinates(lift, a)
        if v is None:
            raise RuntimeError("evaluation homomorphism not found in Hom module")
        cols.append(v.cols[0])
    lift = GradedMatrix(R, X.gens, H.module.gens, cols, check=False)
    return ModuleMap(X, H.module, lift, check=False), H


def natural_map_nu(Y: GradedModule, C: GradedModule) -> tuple[ModuleMap, HomModule]:
    """C (x) Hom(C, Y) -> Y, c (x) psi |-> psi(c)."""
    H = hom_module(C, Y)
    R = Y.ring
    T = tensor_module(C, H.module)
    cols = []
    for k in range(C.ngens):
        for l in range(H.module.ngens):
            cols.append(dict(H.gen_maps[l].cols[k]))
    lift = GradedMatrix(R, T.gens, Y.gens, cols, check=False)
    return ModuleMap(T, Y, lift, check=False), H


def homothety(C: GradedModule) -> tuple[ModuleMap, HomModule]:
    """R -> Hom(C, C), r |-> multiplication by r."""
    R = C.ring
    H = hom_module(C, C)
    v = H.coordinates(GradedMatrix.identity(R, C.gens), 0)
    if v is None:
        raise RuntimeError("identity not found in Hom(C, C)")
    F = GradedModule.free(R, (0,))
    return ModuleMap(F, H.module, GradedMatrix(R, (0,), H.module.gens, v.cols, check=False),
                     check=False), H


def evaluation_map(M: GradedModule, C: GradedModule) -> tuple[ModuleMap, HomModule, HomModule]:
    """M -> Hom(Hom(M, C), C), x |-> (psi |-> psi(x))."""
    R = M.ring
    D = hom_module(M, C)
    DD = hom_module(D.module, C)
    cols = []
    for i, a in enumerate(M.gens):
        # psi_l |-> psi_l(e_i), a lift of degree a on generators of D
        mcols = [dict(D.gen_maps[l].cols[i]) for l in range(D.module.ngens)]
        lift = GradedMatrix(R, [e + a for e in D.module.gens], C.gens, mcols, check=False)
        v = DD.coordinates(lift, a)
        if v is None:
            raise RuntimeError("evaluation not found in the double dual")
        cols.append(v.cols[0])
    lift = GradedMatrix(R, M.gens, DD.module.gens, cols, check=False)
    return ModuleMap(M, DD.module, lift, check=False), D, DD
