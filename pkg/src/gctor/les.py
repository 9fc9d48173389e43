"""Degreewise maps between homology spaces and exactness bookkeeping by ranks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg as la
from .complexes import ChainComplex, HomologySpace, ModuleComplexView, homology_space
from .modules import GradedMatrix


class SpaceCache:
    """Memoized homology spaces H_i(X)_d of one complex."""

    def __init__(self, X: ChainComplex):
        self.X = X
        self.view = ModuleComplexView(X)
        self.p = X.ring.p
        self._h: dict = {}

    def space(self, i: int, d: int) -> HomologySpace:
        key = (i, d)
        h = self._h.get(key)
        if h is None:
            h = homology_space(self.view, i, d)
            self._h[key] = h
        return h

    def ambient(self, i: int, d: int) -> int:
        return self.view.ambient(i, d)

    def relations(self, i: int, d: int):
        return self.view.relations(i, d)


def _apply(lift: GradedMatrix | None, vecs, d: int, n_out: int, p: int):
    if lift is None or vecs.ncols() == 0 or vecs.nrows() == 0:
        return la.zeros(n_out, vecs.ncols(), p)
    return la.mul(lift.block(d), vecs, p)


def induced_map(src: SpaceCache, tgt: SpaceCache, lift: GradedMatrix | None, i: int, d: int,
                i_tgt: int | None = None):
    """Matrix (in representative coordinates) of the map H_i(src)_d -> H_j(tgt)_d."""
    j = i if i_tgt is None else i_tgt
    hs, ht = src.space(i, d), tgt.space(j, d)
    p = src.p
    if hs.dim == 0 or ht.dim == 0:
        return la.zeros(ht.dim, hs.dim, p)
    img = _apply(lift, hs.reps, d, tgt.ambient(j, d), p)
    return ht.coords(img)


def _preimage(lift: GradedMatrix, rel, vecs, d: int, n_src: int, p: int):
    """Some x with lift x = vecs modulo the columns of rel (None if impossible)."""
    A = lift.block(d)
    n = A.nrows()
    big = la.hstack([A, rel], n, p) if rel.ncols() else A
    x = la.solve(big, vecs, p)
    if x is None:
        return None
    return la.select_rows(x, list(range(n_src)), p)


def connecting_map(A: SpaceCache, B: SpaceCache, Cx: SpaceCache, f: dict, g: dict, i: int, d: int):
    """delta: H_i(Cx)_d -> H_{i-1}(A)_d for a short exact sequence A -f-> B -g-> Cx of complexes."""
    p = A.p
    hc = Cx.space(i, d)
    ha = A.space(i - 1, d)
    if hc.dim == 0 or ha.dim == 0:
        return la.zeros(ha.dim, hc.dim, p)
    y = _preimage(g[i], Cx.relations(i, d), hc.reps, d, B.ambient(i, d), p) if i in g else None
    if y is None:
        raise ArithmeticError(f"cycle of the quotient complex does not lift (index {i}, degree {d})")
    by = _apply(B.X.diff(i), y, d, B.ambient(i - 1, d), p)
    x = _preimage(f[i - 1], B.relations(i - 1, d), by, d, A.ambient(i - 1, d), p) if i - 1 in f else None
    if x is None:
        raise ArithmeticError(f"boundary does not come from the subcomplex (index {i}, degree {d})")
    return ha.coords(x)


@dataclass
class Position:
    """One spot U -a-> V -b-> W of a sequence, checked in one degree."""
    label: str
    degree: int
    dim: int
    rank_in: int
    rank_out: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.rank_in + self.rank_out == self.dim

    def to_json(self) -> dict:
        return {"label": self.label, "degree": self.degree, "dim": self.dim,
                "rank_in": self.rank_in, "rank_out": self.rank_out,
                "composite_zero": self.composite_zero, "exact": self.exact}


def check_position(label: str, degree: int, dim: int, a, b, p: int) -> Position:
    """a: U -> V (dim V = dim), b: V -> W; exact iff b a = 0 and rank a + rank b = dim V."""
    ra = la.rank(a) if a is not None else 0
    rb = la.rank(b) if b is not None else 0
    zero = True
    if a is not None and b is not None and a.ncols() and b.nrows() and dim:
        zero = la.is_zero(la.mul(b, a, p))
    return Position(label, degree, dim, ra, rb, zero)


@dataclass
class SequenceReport:
    positions: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(q.exact for q in self.positions)

    def first_failure(self):
        for q in self.positions:
            if not q.exact:
                return q
        return None

    def to_json(self) -> dict:
        bad = self.first_failure()
        return {"exact": self.exact, "checked": len(self.positions),
                "first_failure": bad.to_json() if bad else None}


def les_report(A: ChainComplex, B: ChainComplex, Cx: ChainComplex, f: dict, g: dict,
               indices: Sequence[int], degrees: Sequence[int], names=("A", "B", "C")) -> SequenceReport:
    """Exactness of ... H_i(A) -> H_i(B) -> H_i(Cx) -> H_{i-1}(A) ... at every interior spot.

    ``indices`` lists the i for which all three homology groups are checked;
    positions needing a neighbor outside the list use it anyway (the complexes
    must be defined one step beyond).
    """
    sa, sb, sc = SpaceCache(A), SpaceCache(B), SpaceCache(Cx)
    p = A.ring.p
    rep = SequenceReport()
    na, nb, nc = names
    for d in degrees:
        for i in indices:
            fi = induced_map(sa, sb, f.get(i), i, d)
            gi = induced_map(sb, sc, g.get(i), i, d)
            di = connecting_map(sa, sb, sc, f, g, i, d)
            d_up = connecting_map(sa, sb, sc, f, g, i + 1, d)
            f_low = induced_map(sa, sb, f.get(i - 1), i - 1, d)
            rep.positions.append(check_position(f"H_{i}({na})", d, sa.space(i, d).dim, d_up, fi, p))
            rep.positions.append(check_position(f"H_{i}({nb})", d, sb.space(i, d).dim, fi, gi, p))
            rep.positions.append(check_position(f"H_{i}({nc})", d, sc.space(i, d).dim, gi, di, p))
            rep.positions.append(check_position(f"H_{i-1}({na})", d, sa.space(i - 1, d).dim, di, f_low, p))
    return rep
