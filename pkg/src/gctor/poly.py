"""Polynomials over a prime field, monomial orders and Buchberger's algorithm."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

DEFAULT_PRIME = 32003

Monomial = tuple  # exponent vector


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    """Integers modulo a prime p; elements are plain ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def order_key(order: str, weights: Sequence[int]) -> Callable[[Monomial], tuple]:
    """Sort key realising a monomial order: larger key means larger monomial.

    Supported: 'grevlex' and 'glex' (both refined by the weighted degree),
    'lex', and 'elim:k' which eliminates the first k variables and breaks
    ties by grevlex.
    """
    w = tuple(weights)

    def wdeg(m):
        return sum(a * b for a, b in zip(m, w))

    if order == "grevlex":
        return lambda m: (wdeg(m), tuple(-e for e in reversed(m)))
    if order == "glex":
        return lambda m: (wdeg(m), m)
    if order == "lex":
        return lambda m: m
    if order.startswith("elim:"):
        k = int(order.split(":")[1])
        return lambda m: (sum(m[:k]), wdeg(m), tuple(-e for e in reversed(m)))
    raise ValueError(f"unknown monomial order {order!r}")


class PolyRing:
    """F_p[x_1..x_n] with positive integer weights and a monomial order."""

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None,
                 p: int = DEFAULT_PRIME, order: str = "grevlex"):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        self.field = PrimeField(p)
        self.p = p
        self.order = order
        self.key = order_key(order, self.weights)
        self.one_mono = (0,) * self.nvars

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.names, self.weights, self.p, order)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.weights == other.weights and self.p == other.p
                and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.weights, self.p, self.order))

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; p={self.p}, w={self.weights}, {self.order})"

    def mdeg(self, m: Monomial) -> int:
        return sum(a * b for a, b in zip(m, self.weights))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.one_mono: 1})

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {self.one_mono: c} if c else {})

    def monomial(self, m: Monomial, c: int = 1) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {tuple(m): c} if c else {})

    def var(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomials_of_degree(self, d: int) -> list[Monomial]:
        return _monos(self.weights, d)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def lift_terms(self, terms: dict) -> "Polynomial":
        return Polynomial(self, {m: c % self.p for m, c in terms.items() if c % self.p})


@lru_cache(maxsize=None)
def _monos_cached(weights: tuple, d: int) -> tuple:
    if d < 0:
        return ()
    n = len(weights)
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    w0 = weights[0]
    for a in range(d // w0, -1, -1):
        for rest in _monos_cached(weights[1:], d - a * w0):
            out.append((a,) + rest)
    return tuple(out)


def _monos(weights, d):
    return list(_monos_cached(tuple(weights), d))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Sparse polynomial: dict exponent-tuple -> nonzero coefficient mod p."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # arithmetic
    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        p = self.ring.p
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self.ring.p
        if isinstance(other, int):
            other %= p
            if not other:
                return self.ring.zero()
            return Polynomial(self.ring, {m: c * other % p for m, c in self.terms.items()})
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                t[m] = (t.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # order data
    def leading_monomial(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def leading_coeff(self) -> int:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.leading_coeff())

    def degrees(self) -> set:
        return {self.ring.mdeg(m) for m in self.terms}

    def degree(self) -> int:
        return max(self.degrees()) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: self.ring.key(mc[0]), reverse=True)

    def __repr__(self):
        return format_polynomial(self)

    __str__ = __repr__


def format_monomial(names, m: Monomial) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: terms in decreasing order, coefficients in (-p/2, p/2]."""
    if not f.terms:
        return "0"
    p = f.ring.p
    out = []
    for m, c in f.sorted_terms():
        s = c if c <= p // 2 else c - p
        mono = format_monomial(f.ring.names, m)
        sign = "-" if s < 0 else "+"
        a = abs(s)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class PolyParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at column {pos + 1}")
        self.pos = pos


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Recursive-descent parser for +, -, *, ^ and parentheses."""
    toks = []
    for mt in _TOKEN.finditer(text):
        if mt.group(0).strip() == "":
            continue
        kind = "num" if mt.group(1) else "name" if mt.group(2) else "op"
        toks.append((kind, mt.group(mt.lastindex), mt.start(mt.lastindex)))
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else ("end", "", len(text))

    def take():
        t = peek()
        pos[0] += 1
        return t

    def expr():
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            k, v, at = take()
            if k != "num":
                raise PolyParseError("expected exponent", at)
            base = base ** int(v)
        return base

    def atom():
        k, v, at = take()
        if k == "num":
            return ring.const(int(v))
        if k == "name":
            if v not in ring.names:
                raise PolyParseError(f"unknown variable {v!r}", at)
            return ring.var(v)
        if v == "(":
            e = expr()
            k2, v2, at2 = take()
            if v2 != ")":
                raise PolyParseError("expected ')'", at2)
            return e
        if v == "-":
            return -atom()
        raise PolyParseError(f"unexpected {v!r}" if v else "unexpected end", at)

    out = expr()
    if pos[0] != len(toks):
        raise PolyParseError(f"unexpected {peek()[1]!r}", peek()[2])
    return out


# ---------------------------------------------------------------- Groebner bases


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; generators monic, sorted by decreasing leading monomial."""
    generators: tuple
    order: str

    @property
    def ring(self) -> PolyRing:
        return self.generators[0].ring

    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.generators]

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.leading_monomial() == g.ring.one_mono for g in self.generators)


def _reduce_terms(f: dict, basis: list, key, p: int, full: bool = True) -> dict:
    """Reduce the term dict f by basis entries (lm, tail-terms of a monic poly)."""
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for lm, g in basis:
            if all(x <= y for x, y in zip(lm, m)):
                q = tuple(y - x for x, y in zip(lm, m))
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    mm = tuple(x + y for x, y in zip(q, gm))
                    v = (f.get(mm, 0) - c * gc) % p
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            if not full:
                rem[m] = c
                rem.update(f)
                return rem
            rem[m] = c
    return rem


def _monic_terms(t: dict, key, p) -> tuple:
    lm = max(t, key=key)
    inv = pow(t[lm], p - 2, p)
    return lm, {m: c * inv % p for m, c in t.items()}


def _convert(f: Polynomial, ring: PolyRing) -> Polynomial:
    if f.ring == ring:
        return f
    if f.ring.names != ring.names or f.ring.p != ring.p:
        raise ValueError("incompatible polynomial rings")
    return Polynomial(ring, f.terms)


def groebner_basis(generators: Iterable[Polynomial], order: str | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm with the normal selection strategy.

    Pairs are processed by increasing lcm; the product criterion and the
    chain criterion discard redundant pairs.
    """
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator (use 0 for the zero ideal)")
    ring = gens[0].ring if order is None else gens[0].ring.with_order(order)
    gens = [_convert(g, ring) for g in gens]
    key, p = ring.key, ring.p
    G: list = []  # (lm, terms)
    pairs: list = []

    def add(t):
        lm, t = _monic_terms(t, key, p)
        idx = len(G)
        G.append((lm, t))
        for j in range(idx):
            if G[j] is None:
                continue
            pairs.append((mono_lcm(G[j][0], lm), j, idx))

    for g in gens:
        if g.terms:
            r = _reduce_terms(g.terms, [x for x in G if x is not None], key, p)
            if r:
                add(r)
    while pairs:
        pairs.sort(key=lambda t: key(t[0]))
        lcm, i, j = pairs.pop(0)
        if G[i] is None or G[j] is None:
            continue
        li, lj = G[i][0], G[j][0]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # product criterion
        chain = False
        for k, gk in enumerate(G):
            if gk is None or k in (i, j):
                continue
            if mono_divides(gk[0], lcm):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                pending = {(x, y) for _, x, y in pairs}
                if a not in pending and b not in pending:
                    chain = True
                    break
        if chain:
            continue
        s: dict = {}
        for (lm, t), sign in ((G[i], 1), (G[j], -1)):
            q = mono_div(lcm, lm)
            for m, c in t.items():
                mm = mono_mul(q, m)
                v = (s.get(mm, 0) + sign * c) % p
                if v:
                    s[mm] = v
                else:
                    s.pop(mm, None)
        r = _reduce_terms(s, [x for x in G if x is not None], key, p)
        if r:
            add(r)
    # minimalise and reduce
    live = [g for g in G if g is not None]
    minimal = []
    for idx, (lm, t) in enumerate(live):
        if any(mono_divides(lm2, lm) and (lm2 != lm or j < idx)
               for j, (lm2, _) in enumerate(live) if j != idx):
            continue
        minimal.append((lm, t))
    reduced = []
    for idx, (lm, t) in enumerate(minimal):
        others = [x for j, x in enumerate(minimal) if j != idx]
        tail = {m: c for m, c in t.items() if m != lm}
        tail = _reduce_terms(tail, others, key, p)
        tail[lm] = 1
        reduced.append(Polynomial(ring, tail))
    if not reduced:
        reduced = [ring.zero()]
    else:
        reduced.sort(key=lambda g: key(g.leading_monomial()), reverse=True)
    return GroebnerBasis(tuple(reduced), ring.order)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of f modulo the Groebner basis."""
    ring = gb.generators[0].ring
    f = _convert(f, ring)
    basis = [(g.leading_monomial(), g.terms) for g in gb.generators if g.terms]
    return Polynomial(ring, _reduce_terms(f.terms, basis, ring.key, ring.p))


def elimination_ideal(generators: Sequence[Polynomial], eliminate: Sequence[str],
                      keep_ring: PolyRing) -> list[Polynomial]:
    """Generators of I intersected with the subring in keep_ring's variables.

    The eliminated variables are moved to the front and an elimination
    order is used; the output lives in keep_ring.
    """
    ring = generators[0].ring
    elim = list(eliminate)
    rest = [n for n in ring.names if n not in elim]
    if tuple(rest) != keep_ring.names:
        raise ValueError("keep_ring must list the remaining variables in order")
    perm = [ring.names.index(n) for n in elim + rest]
    w = [ring.weights[i] for i in perm]
    big = PolyRing(elim + rest, w, ring.p, f"elim:{len(elim)}")
    moved = [Polynomial(big, {tuple(m[i] for i in perm): c for m, c in g.terms.items()})
             for g in generators]
    gb = groebner_basis(moved)
    k = len(elim)
    out = []
    for g in gb.generators:
        if g.terms and all(sum(m[:k]) == 0 for m in g.terms):
            out.append(Polynomial(keep_ring, {m[k:]: c for m, c in g.terms.items()}))
    return out
