"""Text format for problem instances: parse, print (round-trip) and build.

Example::

    ring p=32003 vars=x,y weights=1,1 ideal=x*y
    C = R
    module M = R/(x^2)
    module N = coker{0}[x]
    bounds B=6 w=4 D=20
    check verify-am M N

Module expressions: ``k``, ``k(e)``, ``R``, ``R(e)``, ``C``, ``free{d,...}``,
``R/(f,...)``, ``coker{d,...}[row | row]`` (rows are generators, columns
relations; degrees default to 0), ``syzygy(A, n)``, ``dual(A)``,
``transpose(A)``, ``sum(A, B, ...)``, ``twist(A, e)``,
``extension(A, B)[rows]`` (presentation [[rel A, E], [0, rel B]] with E given
by rows indexed by generators of A), or the name of an earlier module.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .config import Bounds
from .poly import PolyParseError, PolyRing
from .ring import DEFAULT_PRIME, GradedRing, NotHomogeneousError

COMMANDS = ("verify-am", "depth-absolute", "depth-relative", "duality", "independence", "gcdim",
            "tor", "tate", "reltor")
ARITY = {"gcdim": 1}
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9']*")
_INT = re.compile(r"-?\d+")


class InstanceError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)
        self.line, self.col = line, col


@dataclass
class RingDef:
    p: int = DEFAULT_PRIME
    vars: tuple = ()
    weights: tuple | None = None
    ideal: tuple = ()
    order: str = "grevlex"

    def poly_ring(self) -> PolyRing:
        return PolyRing(list(self.vars), list(self.weights) if self.weights else None, self.p, self.order)


@dataclass
class InstanceSpec:
    ring: RingDef
    C: tuple = ("R",)
    modules: dict = field(default_factory=dict)      # name -> expression tuple, in order
    bounds: Bounds = field(default_factory=Bounds)
    checks: list = field(default_factory=list)       # (command, args)


# ---------------------------------------------------------------- printing


def _fmt_degs(d):
    return "{" + ",".join(str(x) for x in d) + "}"


def _fmt_rows(rows):
    return "[" + " | ".join(", ".join(r) for r in rows) + "]"


def format_expr(e: tuple) -> str:
    tag = e[0]
    if tag in ("k", "R"):
        return tag if e[1] == 0 else f"{tag}({e[1]})"
    if tag == "C":
        return "C"
    if tag == "ref":
        return e[1]
    if tag == "free":
        return "free" + _fmt_degs(e[1])
    if tag == "quot":
        return "R/(" + ", ".join(e[1]) + ")"
    if tag == "coker":
        return "coker" + _fmt_degs(e[1]) + _fmt_rows(e[2])
    if tag == "syzygy":
        return f"syzygy({e[1]}, {e[2]})"
    if tag in ("dual", "transpose"):
        return f"{tag}({e[1]})"
    if tag == "sum":
        return "sum(" + ", ".join(e[1]) + ")"
    if tag == "twist":
        return f"twist({e[1]}, {e[2]})"
    if tag == "extension":
        return f"extension({e[1]}, {e[2]})" + _fmt_rows(e[3])
    raise ValueError(f"unknown expression {tag}")


def format_instance(spec: InstanceSpec) -> str:
    r = spec.ring
    parts = [f"ring p={r.p} vars={','.join(r.vars)}"]
    if r.weights:
        parts.append("weights=" + ",".join(str(w) for w in r.weights))
    if r.ideal:
        parts.append("ideal=" + ",".join(r.ideal))
    if r.order != "grevlex":
        parts.append(f"order={r.order}")
    lines = [" ".join(parts)]
    lines.append("C = " + ("R" if spec.C == ("R",) else "canonical" if spec.C == ("canonical",)
                           else format_expr(spec.C[1])))
    for name, e in spec.modules.items():
        lines.append(f"module {name} = {format_expr(e)}")
    b = spec.bounds
    bparts = ([f"B={b.B}"] if b.B is not None else []) + [f"w={b.w}", f"D={b.D}"]
    lines.append("bounds " + " ".join(bparts))
    for cmd, args in spec.checks:
        lines.append("check " + " ".join((cmd,) + tuple(args)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parsing


class _Cursor:
    def __init__(self, text: str, line: int, offset: int = 0):
        self.s, self.line, self.i = text, line, offset

    def err(self, msg, at=None):
        return InstanceError(msg, self.line, (self.i if at is None else at) + 1)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, lit: str) -> bool:
        self.ws()
        return self.s.startswith(lit, self.i)

    def eat(self, lit: str):
        self.ws()
        if not self.s.startswith(lit, self.i):
            raise self.err(f"expected {lit!r}")
        self.i += len(lit)

    def name(self) -> str:
        self.ws()
        m = _NAME.match(self.s, self.i)
        if not m:
            raise self.err("expected a name")
        self.i = m.end()
        return m.group(0)

    def integer(self) -> int:
        self.ws()
        m = _INT.match(self.s, self.i)
        if not m:
            raise self.err("expected an integer")
        self.i = m.end()
        return int(m.group(0))

    def at_end(self) -> bool:
        self.ws()
        return self.i >= len(self.s)

    def until(self, stops: str) -> tuple[str, int]:
        """Raw text up to the first top-level character in ``stops``."""
        self.ws()
        start, depth = self.i, 0
        while self.i < len(self.s):
            c = self.s[self.i]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0 and ")" in stops:
                    break
                depth -= 1
            elif depth == 0 and c in stops:
                break
            self.i += 1
        return self.s[start:self.i], start


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.spec: InstanceSpec | None = None
        self.S: PolyRing | None = None

    def poly(self, cur: _Cursor, raw: str, at: int) -> str:
        body = raw.strip()
        if not body:
            raise cur.err("empty polynomial", at)
        lead = at + (len(raw) - len(raw.lstrip()))
        try:
            f = self.S.parse(body)
        except PolyParseError as e:
            raise cur.err(str(e).rsplit(" at column", 1)[0], lead + e.pos)
        if not f.is_zero() and not f.is_homogeneous():
            raise cur.err(f"polynomial {body!r} is not homogeneous", lead)
        return re.sub(r"\s+", "", body)

    def poly_list(self, cur: _Cursor, close: str) -> list:
        out = []
        while True:
            raw, at = cur.until("," + close)
            out.append(self.poly(cur, raw, at))
            if cur.peek(","):
                cur.eat(",")
                continue
            return out

    def degrees(self, cur: _Cursor) -> tuple:
        cur.eat("{")
        out = []
        if not cur.peek("}"):
            out.append(cur.integer())
            while cur.peek(","):
                cur.eat(",")
                out.append(cur.integer())
        cur.eat("}")
        return tuple(out)

    def rows(self, cur: _Cursor) -> tuple:
        cur.eat("[")
        rows = []
        while True:
            row = []
            while True:
                raw, at = cur.until(",|]")
                row.append(self.poly(cur, raw, at))
                if cur.peek(","):
                    cur.eat(",")
                    continue
                break
            rows.append(tuple(row))
            if cur.peek("|"):
                cur.eat("|")
                continue
            cur.eat("]")
            break
        if len({len(r) for r in rows}) > 1:
            raise cur.err("rows have different lengths")
        return tuple(rows)

    def ref(self, cur: _Cursor) -> str:
        at = cur.i
        nm = cur.name()
        if nm not in self.spec.modules:
            raise cur.err(f"undefined module {nm!r}", at)
        return nm

    def expr(self, cur: _Cursor) -> tuple:
        cur.ws()
        at = cur.i
        nm = cur.name()
        if nm in ("k", "R"):
            if nm == "R" and cur.peek("/"):
                cur.eat("/")
                cur.eat("(")
                polys = self.poly_list(cur, ")")
                cur.eat(")")
                return ("quot", tuple(polys))
            if cur.peek("("):
                cur.eat("(")
                e = cur.integer()
                cur.eat(")")
                return (nm, e)
            return (nm, 0)
        if nm == "C":
            return ("C",)
        if nm == "free":
            return ("free", self.degrees(cur))
        if nm == "coker":
            degs = self.degrees(cur) if cur.peek("{") else None
            rows = self.rows(cur)
            if degs is None:
                degs = (0,) * len(rows)
            if len(degs) != len(rows):
                raise cur.err("degree list does not match the number of rows", at)
            return ("coker", degs, rows)
        if nm in ("syzygy", "twist"):
            cur.eat("(")
            a = self.ref(cur)
            cur.eat(",")
            e = cur.integer()
            cur.eat(")")
            if nm == "syzygy" and e < 0:
                raise cur.err("syzygy index must be nonnegative", at)
            return (nm, a, e)
        if nm in ("dual", "transpose"):
            cur.eat("(")
            a = self.ref(cur)
            cur.eat(")")
            return (nm, a)
        if nm == "sum":
            cur.eat("(")
            names = [self.ref(cur)]
            while cur.peek(","):
                cur.eat(",")
                names.append(self.ref(cur))
            cur.eat(")")
            return ("sum", tuple(names))
        if nm == "extension":
            cur.eat("(")
            a = self.ref(cur)
            cur.eat(",")
            b = self.ref(cur)
            cur.eat(")")
            return ("extension", a, b, self.rows(cur))
        if nm in self.spec.modules:
            return ("ref", nm)
        raise cur.err(f"unknown module expression {nm!r}", at)

    def ring_line(self, cur: _Cursor) -> RingDef:
        rd = RingDef()
        seen = set()
        while not cur.at_end():
            at = cur.i
            key = cur.name()
            cur.eat("=")
            if key in seen:
                raise cur.err(f"duplicate field {key!r}", at)
            seen.add(key)
            if key == "p":
                rd.p = cur.integer()
            elif key == "vars":
                vs = [cur.name()]
                while cur.peek(","):
                    cur.eat(",")
                    vs.append(cur.name())
                rd.vars = tuple(vs)
            elif key == "weights":
                ws = [cur.integer()]
                while cur.peek(","):
                    cur.eat(",")
                    ws.append(cur.integer())
                rd.weights = tuple(ws)
            elif key == "order":
                rd.order = cur.name()
            elif key == "ideal":
                raw, start = cur.until(" \t")
                rd.ideal = tuple(self._split_top(raw, start, cur))
            else:
                raise cur.err(f"unknown ring field {key!r}", at)
        if not rd.vars:
            raise cur.err("ring needs vars=")
        if rd.weights is not None and len(rd.weights) != len(rd.vars):
            raise cur.err("weights must match vars")
        try:
            self.S = rd.poly_ring()
        except ValueError as e:
            raise cur.err(str(e), 0)
        rd.ideal = tuple(self.poly(cur, raw, at) for raw, at in rd.ideal)
        return rd

    @staticmethod
    def _split_top(raw, start, cur):
        out, depth, last = [], 0, 0
        for j, c in enumerate(raw + ","):
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif c == "," and depth == 0:
                out.append((raw[last:j], start + last))
                last = j + 1
        return out

    def parse(self) -> InstanceSpec:
        for ln, line in enumerate(self.text.splitlines(), start=1):
            body = line.split("#", 1)[0].rstrip()
            if body.endswith(";"):
                body = body[:-1]
            if not body.strip():
                continue
            cur = _Cursor(body, ln)
            at = (cur.ws(), cur.i)[1]
            head = cur.name()
            if head == "ring":
                if self.spec is not None:
                    raise cur.err("ring defined twice", at)
                self.spec = InstanceSpec(self.ring_line(cur))
                continue
            if self.spec is None:
                raise cur.err("the first statement must be 'ring'", at)
            if head == "C":
                cur.eat("=")
                save = cur.i
                w = cur.name()
                if w in ("R", "canonical") and cur.at_end():
                    self.spec.C = (w,)
                else:
                    cur.i = save
                    self.spec.C = ("module", self.expr(cur))
            elif head == "module":
                nat = cur.i
                nm = cur.name()
                if nm in ("k", "R", "C") or nm in self.spec.modules:
                    raise cur.err(f"module name {nm!r} already in use", nat + 1)
                cur.eat("=")
                self.spec.modules[nm] = self.expr(cur)
            elif head == "bounds":
                b = self.spec.bounds
                while not cur.at_end():
                    kat = cur.i
                    key = cur.name()
                    cur.eat("=")
                    val = cur.integer()
                    if key not in ("B", "w", "D"):
                        raise cur.err(f"unknown bound {key!r}", kat)
                    if val < 0:
                        raise cur.err("bounds must be nonnegative", kat)
                    setattr(b, key, val)
            elif head == "check":
                cur.ws()
                cat = cur.i
                m = re.compile(r"[a-z\-]+").match(cur.s, cur.i)
                cmd = m.group(0) if m else ""
                cur.i += len(cmd)
                if cmd not in COMMANDS:
                    raise cur.err(f"unknown command {cmd!r}", cat)
                args = []
                while not cur.at_end():
                    args.append(self.ref(cur))
                if len(args) != ARITY.get(cmd, 2):
                    raise cur.err(f"{cmd} takes {ARITY.get(cmd, 2)} module(s)", cat)
                self.spec.checks.append((cmd, tuple(args)))
            else:
                raise cur.err(f"unknown statement {head!r}", at)
            if not cur.at_end():
                raise cur.err("unexpected trailing text")
        if self.spec is None:
            raise InstanceError("empty instance: no ring statement")
        return self.spec


def parse_instance(text: str) -> InstanceSpec:
    return _Parser(text).parse()


# ---------------------------------------------------------------- building


@dataclass
class Instance:
    spec: InstanceSpec
    ring: GradedRing
    ctx: object
    modules: dict


def build_ring(rd: RingDef) -> GradedRing:
    S = rd.poly_ring()
    return GradedRing(S, [S.parse(f) for f in rd.ideal])


def _coker(R, degs, rows, name=None):
    from .modules import GradedMatrix, GradedModule
    polys = [[R.parse(e) for e in row] for row in rows]
    ncol = len(rows[0]) if rows else 0
    src = []
    for j in range(ncol):
        d = None
        for i in range(len(rows)):
            f = polys[i][j]
            if f.terms:
                d = degs[i] + f.degree()
                break
        if d is None:
            d = max(degs) if degs else 0
        src.append(d)
    try:
        mat = GradedMatrix.from_polys(R, src, degs, polys)
    except ValueError as e:
        raise InstanceError(f"module {name}: {e}")
    return GradedModule(mat, name)


def build_module(R, ctx, e: tuple, env: dict, name=None):
    from .modules import GradedMatrix, GradedModule, direct_sum, hom_module, minimal_presentation
    from .semidualizing import syzygy_module, transpose
    tag = e[0]
    if tag == "k":
        return GradedModule.residue_field(R, e[1])
    if tag == "R":
        return GradedModule.free(R, (e[1],))
    if tag == "C":
        if ctx is None:
            raise InstanceError("C used inside its own definition")
        return ctx.C
    if tag == "ref":
        return env[e[1]]
    if tag == "free":
        return GradedModule.free(R, e[1])
    if tag == "quot":
        return GradedModule.cyclic(R, list(e[1]))
    if tag == "coker":
        return _coker(R, e[1], e[2], name)
    if tag == "syzygy":
        return syzygy_module(env[e[1]], e[2])
    if tag == "dual":
        return minimal_presentation(hom_module(env[e[1]], ctx.C).module).module
    if tag == "transpose":
        return transpose(env[e[1]], ctx)
    if tag == "sum":
        return direct_sum([env[n] for n in e[1]])
    if tag == "twist":
        return env[e[1]].twist(e[2])
    if tag == "extension":
        A, B = env[e[1]], env[e[2]]
        E = _coker(R, A.gens, e[3], name) if e[3] else None
        if E is None or len(e[3]) != A.ngens or len(e[3][0]) != B.pres.ncols:
            raise InstanceError(f"module {name}: extension matrix must be {A.ngens} x {B.pres.ncols}")
        # source degrees must be those of B's relations
        if tuple(E.pres.source) != tuple(B.pres.source) and not E.pres.is_zero():
            raise InstanceError(f"module {name}: extension entries have the wrong degrees")
        pres = GradedMatrix(R, tuple(A.pres.source) + tuple(B.pres.source), tuple(A.gens) + tuple(B.gens),
                            list(A.pres.cols) + [dict(c) | {A.ngens + k: t for k, t in bc.items()}
                                                 for c, bc in zip(E.pres.cols, B.pres.cols)],
                            check=True)
        M = GradedModule(pres, name)
        _certify_extension(A, M, B)
        return M
    raise InstanceError(f"unknown expression {tag}")


def _certify_extension(A, M, B):
    from .modules import GradedMatrix, ModuleMap
    from .relative_tate import certify_short_exact
    R = A.ring
    one = R.S.one_mono
    na = A.ngens
    f = ModuleMap(A, M, GradedMatrix(R, A.gens, M.gens, [{k: {one: 1}} for k in range(na)], check=False),
                  check=False)
    g = ModuleMap(M, B, GradedMatrix(R, M.gens, B.gens, [dict() for _ in range(na)] +
                                     [{k: {one: 1}} for k in range(B.ngens)], check=False), check=False)
    bad = certify_short_exact(f, g)
    if bad:
        raise InstanceError(f"extension is not a short exact sequence: {bad}")


def build(spec: InstanceSpec) -> Instance:
    from .semidualizing import canonical_module, make_context, trivial_context
    try:
        R = build_ring(spec.ring)
    except (NotHomogeneousError, ValueError) as e:
        raise InstanceError(f"ring: {e}")
    bound = spec.bounds.B
    if spec.C == ("R",):
        ctx = trivial_context(R, bound)
    elif spec.C == ("canonical",):
        ctx = make_context(canonical_module(R, bound), bound, notes=["C is the canonical module"])
    else:
        C = build_module(R, None, spec.C[1], {}, "C")
        ctx = make_context(C, bound)
    env: dict = {}
    for name, e in spec.modules.items():
        env[name] = build_module(R, ctx, e, env, name)
    return Instance(spec, R, ctx, env)
