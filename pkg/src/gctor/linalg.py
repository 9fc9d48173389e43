"""Exact linear algebra mod p on top of python-flint's nmod_mat.

Matrices are flint nmod_mat objects; the helpers here smooth over
zero-sized shapes, which flint handles inconsistently.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import flint

Mat = flint.nmod_mat


def zeros(r: int, c: int, p: int) -> Mat:
    return flint.nmod_mat(r, c, p)


def identity(n: int, p: int) -> Mat:
    m = flint.nmod_mat(n, n, p)
    for i in range(n):
        m[i, i] = 1
    return m


def from_rows(rows: Sequence[Sequence[int]], ncols: int, p: int) -> Mat:
    flat = [v for r in rows for v in r]
    return flint.nmod_mat(len(rows), ncols, flat, p) if rows else flint.nmod_mat(0, ncols, p)


def from_columns(cols: Sequence[dict], nrows: int, p: int) -> Mat:
    """Matrix whose j-th column has entries cols[j] (a dict row -> value)."""
    m = flint.nmod_mat(nrows, len(cols), p)
    for j, col in enumerate(cols):
        for i, v in col.items():
            m[i, j] = v
    return m


def nonzeros(m: Mat) -> list:
    """(i, j, value) for the nonzero entries; nmod truth tests are cheap, int() is not."""
    r, c = m.nrows(), m.ncols()
    if r == 0 or c == 0:
        return []
    out = []
    for k, v in enumerate(m.entries()):
        if v:
            i, j = divmod(k, c)
            out.append((i, j, int(v)))
    return out


def to_rows(m: Mat) -> list[list[int]]:
    r, c = m.nrows(), m.ncols()
    rows = [[0] * c for _ in range(r)]
    for i, j, v in nonzeros(m):
        rows[i][j] = v
    return rows


def columns(m: Mat) -> list[dict]:
    """Sparse columns as dicts row -> value."""
    out = [dict() for _ in range(m.ncols())]
    for i, j, v in nonzeros(m):
        out[j][i] = v
    return out


def column(m: Mat, j: int) -> list[int]:
    return [int(m[i, j]) for i in range(m.nrows())]


def rank(m: Mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def is_zero(m: Mat) -> bool:
    return rank(m) == 0


def hstack(mats: Sequence[Mat], nrows: int, p: int) -> Mat:
    cols = sum(x.ncols() for x in mats)
    out = flint.nmod_mat(nrows, cols, p)
    off = 0
    for x in mats:
        if x.nrows() != nrows:
            raise ValueError("row mismatch in hstack")
        for i, j, v in nonzeros(x):
            out[i, off + j] = v
        off += x.ncols()
    return out


def vstack(mats: Sequence[Mat], ncols: int, p: int) -> Mat:
    rows = sum(x.nrows() for x in mats)
    out = flint.nmod_mat(rows, ncols, p)
    off = 0
    for x in mats:
        if x.ncols() != ncols:
            raise ValueError("column mismatch in vstack")
        for i, j, v in nonzeros(x):
            out[off + i, j] = v
        off += x.nrows()
    return out


def mul(a: Mat, b: Mat, p: int) -> Mat:
    if a.ncols() != b.nrows():
        raise ValueError("shape mismatch in product")
    if a.nrows() == 0 or b.ncols() == 0 or a.ncols() == 0:
        return zeros(a.nrows(), b.ncols(), p)
    return a * b


def add(a: Mat, b: Mat, p: int) -> Mat:
    if a.nrows() == 0 or a.ncols() == 0:
        return zeros(a.nrows(), a.ncols(), p)
    return a + b


def neg(a: Mat, p: int) -> Mat:
    if a.nrows() == 0 or a.ncols() == 0:
        return a
    return -a


def transpose(a: Mat, p: int) -> Mat:
    if a.nrows() == 0 or a.ncols() == 0:
        return zeros(a.ncols(), a.nrows(), p)
    return a.transpose()


def select_columns(a: Mat, idx: Sequence[int], p: int) -> Mat:
    out = zeros(a.nrows(), len(idx), p)
    pos: dict = {}
    for jj, j in enumerate(idx):
        pos.setdefault(j, []).append(jj)
    for i, j, v in nonzeros(a):
        for jj in pos.get(j, ()):
            out[i, jj] = v
    return out


def select_rows(a: Mat, idx: Sequence[int], p: int) -> Mat:
    out = zeros(len(idx), a.ncols(), p)
    pos: dict = {}
    for ii, i in enumerate(idx):
        pos.setdefault(i, []).append(ii)
    for i, j, v in nonzeros(a):
        for ii in pos.get(i, ()):
            out[ii, j] = v
    return out


def _rref_pivots_only(r: Mat, rk: int) -> list[int]:
    piv = []
    j = 0
    n = r.ncols()
    for i in range(rk):
        while j < n and not r[i, j]:
            j += 1
        piv.append(j)
        j += 1
    return piv


def rref_pivots(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    if a.nrows() == 0 or a.ncols() == 0:
        return a, []
    r, rk = a.rref()
    return r, _rref_pivots_only(r, rk)


def pivot_columns(a: Mat) -> list[int]:
    """Indices of a maximal independent set of columns (greedy, left to right)."""
    return rref_pivots(a)[1]


def nullspace(a: Mat, p: int) -> Mat:
    """Matrix whose columns form a basis of {x : a x = 0}."""
    n = a.ncols()
    if n == 0:
        return zeros(0, 0, p)
    if a.nrows() == 0:
        return identity(n, p)
    x, k = a.nullspace()
    if k == 0:
        return zeros(n, 0, p)
    return select_columns(x, list(range(k)), p)


def colspace(a: Mat, p: int) -> Mat:
    """Independent columns of a spanning its column space."""
    return select_columns(a, pivot_columns(a), p)


def solve(a: Mat, b: Mat, p: int) -> Mat | None:
    """Some X with a X = b, or None when the system is inconsistent."""
    n, m = a.ncols(), b.ncols()
    if a.nrows() != b.nrows():
        raise ValueError("row mismatch in solve")
    if m == 0:
        return zeros(n, 0, p)
    if a.nrows() == 0:
        return zeros(n, m, p)
    aug = hstack([a, b], a.nrows(), p)
    r, piv = rref_pivots(aug)
    if any(j >= n for j in piv):
        return None
    x = zeros(n, m, p)
    for i, j in enumerate(piv):
        for k in range(m):
            v = r[i, n + k]
            if v:
                x[j, k] = int(v)
    return x


def in_span(a: Mat, b: Mat) -> bool:
    """True when every column of b lies in the column space of a."""
    if b.ncols() == 0 or b.nrows() == 0:
        return True
    if a.ncols() == 0:
        return is_zero(b)
    return rank(a) == rank(hstack([a, b], a.nrows(), a.modulus()))


def extend_basis(sub: Mat, cand: Mat, p: int) -> list[int]:
    """Indices of columns of cand that extend span(sub) to span(sub, cand)."""
    k = sub.ncols()
    if cand.ncols() == 0:
        return []
    if k == 0:
        return pivot_columns(cand)
    piv = pivot_columns(hstack([sub, cand], sub.nrows(), p))
    return [j - k for j in piv if j >= k]


def intersect(a: Mat, b: Mat, p: int) -> Mat:
    """Basis of span(a) intersected with span(b)."""
    if a.ncols() == 0 or b.ncols() == 0:
        return zeros(a.nrows(), 0, p)
    ns = nullspace(hstack([a, b], a.nrows(), p), p)
    top = select_rows(ns, list(range(a.ncols())), p)
    return colspace(mul(a, top, p), p)


def vector(values: Iterable[int], p: int) -> Mat:
    v = list(values)
    return flint.nmod_mat(len(v), 1, v, p) if v else zeros(0, 1, p)
