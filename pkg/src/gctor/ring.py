"""Graded quotient rings S/I with degreewise standard-monomial bases."""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .poly import (DEFAULT_PRIME, PolyRing, Polynomial, groebner_basis,
                   mono_divides, normal_form)


class NotHomogeneousError(ValueError):
    pass


class GradedRing:
    """R = S/I for a homogeneous ideal I with respect to positive weights.

    Elements are stored as normal forms modulo the reduced Groebner basis of
    I; the standard monomials of each degree form the basis of R_d.
    """

    def __init__(self, poly_ring: PolyRing, ideal: Sequence[Polynomial] = ()):
        self.S = poly_ring
        self.p = poly_ring.p
        self.weights = poly_ring.weights
        self.nvars = poly_ring.nvars
        gens = [g for g in ideal if not g.is_zero()]
        for g in gens:
            if not g.is_homogeneous():
                raise NotHomogeneousError(f"{g} is not homogeneous for weights {self.weights}")
        self.ideal_gens = tuple(gens)
        # per-ring memo tables; they live and die with the ring, so keys never outlive it
        self.caches: dict = {}
        if gens:
            self.gb = groebner_basis(gens)
            if self.gb.is_unit_ideal():
                raise ValueError("the ideal is the unit ideal")
            self._lts = [g.leading_monomial() for g in self.gb.generators]
            self._red = [(g.leading_monomial(), g.terms) for g in self.gb.generators]
        else:
            self.gb = None
            self._lts = []
            self._red = []
        self._basis: dict = {}
        self._index: dict = {}
        self._nf: dict = {}
        self._dim = None

    def cache(self, name: str) -> dict:
        return self.caches.setdefault(name, {})

    # identity

    def key(self):
        return (self.S.names, self.S.weights, self.p, self.S.order,
                tuple(sorted(tuple(sorted(g.terms.items())) for g in self.gb.generators)) if self.gb else ())

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        ids = ", ".join(map(str, self.ideal_gens)) or "0"
        return f"{self.S.names} / ({ids})"

    # elements
    @property
    def names(self):
        return self.S.names

    def var(self, i):
        return self.S.var(i)

    def parse(self, text: str) -> Polynomial:
        return self.reduce(self.S.parse(text))

    def reduce(self, f: Polynomial) -> Polynomial:
        if self.gb is None:
            return f
        return normal_form(f, self.gb)

    def is_standard(self, m) -> bool:
        return not any(mono_divides(lt, m) for lt in self._lts)

    def basis(self, d: int) -> list:
        """Standard monomials of weighted degree d, decreasing in the monomial order."""
        b = self._basis.get(d)
        if b is None:
            b = [m for m in self.S.monomials_of_degree(d) if self.is_standard(m)]
            b.sort(key=self.S.key, reverse=True)
            self._basis[d] = b
            self._index[d] = {m: i for i, m in enumerate(b)}
        return b

    def index(self, d: int) -> dict:
        if d not in self._index:
            self.basis(d)
        return self._index[d]

    def hilbert(self, d: int) -> int:
        return len(self.basis(d))

    def nf_mono(self, m) -> dict:
        """Normal form of a monomial as a dict standard monomial -> coeff."""
        r = self._nf.get(m)
        if r is not None:
            return r
        for lm, g in self._red:
            if all(x <= y for x, y in zip(lm, m)):
                break
        else:
            r = {m: 1}
            self._nf[m] = r
            return r
        p = self.p
        q = tuple(y - x for x, y in zip(lm, m))
        out: dict = {}
        for gm, gc in g.items():
            if gm == lm:
                continue
            mm = tuple(x + y for x, y in zip(q, gm))
            for t, c in self.nf_mono(mm).items():
                v = (out.get(t, 0) - gc * c) % p
                if v:
                    out[t] = v
                else:
                    out.pop(t)
        self._nf[m] = out
        return out

    def nf_terms(self, terms: dict) -> dict:
        p = self.p
        out: dict = {}
        for m, c in terms.items():
            for t, c2 in self.nf_mono(m).items():
                v = (out.get(t, 0) + c * c2) % p
                if v:
                    out[t] = v
                else:
                    out.pop(t)
        return out

    def mul_terms(self, a: dict, b: dict) -> dict:
        p = self.p
        raw: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                raw[m] = (raw.get(m, 0) + c1 * c2) % p
        return self.nf_terms({m: c for m, c in raw.items() if c})

    def mul(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return Polynomial(self.S, self.mul_terms(f.terms, g.terms))

    def element(self, terms: dict) -> Polynomial:
        return Polynomial(self.S, dict(terms))

    def degree_of(self, terms: dict) -> int | None:
        """Weighted degree of a homogeneous term dict (None for 0)."""
        for m in terms:
            return self.S.mdeg(m)
        return None

    # invariants
    def krull_dim(self) -> int:
        """Dimension of S/LT(I): largest variable set avoided by every leading monomial."""
        if self._dim is None:
            n = self.nvars
            best = 0
            for k in range(n, 0, -1):
                for U in combinations(range(n), k):
                    if all(any(lt[i] > 0 for i in range(n) if i not in U) for lt in self._lts):
                        best = k
                        break
                if best:
                    break
            self._dim = best
        return self._dim

    def is_artinian(self) -> bool:
        return self.krull_dim() == 0

    def top_degree(self) -> int:
        """Largest degree with R_d nonzero (Artinian rings only)."""
        if not self.is_artinian():
            raise ValueError("ring is not Artinian")
        top, d, empty = 0, 0, 0
        maxw = max(self.weights)
        while empty < maxw:
            if self.basis(d):
                top, empty = d, 0
            else:
                empty += 1
            d += 1
        return top

    def vector_dim(self) -> int:
        return sum(len(self.basis(d)) for d in range(self.top_degree() + 1))

    def maximal_ideal(self) -> list[Polynomial]:
        return self.S.gens()


def quotient_ring(names: Sequence[str] | PolyRing, ideal: Sequence = (), weights=None,
                  p: int = DEFAULT_PRIME, order: str = "grevlex") -> GradedRing:
    """Build S/I; ideal entries may be Polynomials or strings."""
    S = names if isinstance(names, PolyRing) else PolyRing(names, weights, p, order)
    gens = [S.parse(g) if isinstance(g, str) else g for g in ideal]
    return GradedRing(S, gens)


def polynomial_ring(names, weights=None, p: int = DEFAULT_PRIME) -> GradedRing:
    return quotient_ring(names, (), weights, p)
