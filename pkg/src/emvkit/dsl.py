"""Line-oriented description language for algebras and tribes.

    program   := stmt*
    stmt      := 'algebra' NAME '=' expr
               | 'tribe' NAME 'on' '{' atom (',' atom)* '}' '=' '{' [fuzzy (',' fuzzy)*] '}'
    expr      := 'chain' '(' INT ')' | 'product' '(' expr ',' expr ')'
               | 'finsupport' '(' 'chain' '(' INT ')' ')' | 'finite_sets' | 'chang'
               | 'table' '{' field* '}' | NAME
    field     := 'elements' ':' '[' atom (',' atom)* ']' | 'zero' ':' atom
               | ('oplus' | 'join' | 'leq') ':' '[' row (';' row)* ']'
    row       := atom (',' atom)*
    fuzzy     := '(' rational (',' rational)* ')'
    rational  := INT | INT '/' INT

``#`` starts a comment.  Diagnostics carry a code, a line and column and,
for syntax errors, the set of tokens that would have been accepted:
E1xx syntax, E2xx arity or range, E3xx malformed table, E4xx names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError

# ---------------------------------------------------------------------------
# diagnostics


class DslError(PreconditionError):
    def __init__(self, code: str, line: int, col: int, message: str, expected=()):
        self.code = code
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        self.message = message
        text = f"{line}:{col}: {code} {message}"
        if self.expected:
            text += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(text)


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Chain:
    order: int


@dataclass(frozen=True)
class Product:
    left: object
    right: object


@dataclass(frozen=True)
class FinSupport:
    order: int


@dataclass(frozen=True)
class FiniteSets:
    pass


@dataclass(frozen=True)
class Chang:
    pass


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Table:
    elements: tuple
    zero: str
    oplus: tuple
    join: tuple | None = None
    leq: tuple | None = None


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    expr: object


@dataclass(frozen=True)
class TribeDecl:
    name: str
    omega: tuple
    generators: tuple


@dataclass(frozen=True)
class Program:
    stmts: tuple

    def algebras(self):
        return [s for s in self.stmts if isinstance(s, AlgebraDecl)]

    def tribes(self):
        return [s for s in self.stmts if isinstance(s, TribeDecl)]


# ---------------------------------------------------------------------------
# lexer

KEYWORDS = {
    "algebra", "tribe", "on", "chain", "product", "finsupport", "finite_sets", "chang",
    "table", "elements", "zero", "oplus", "join", "leq",
}
_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<int>\d+)"
                    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(){}\[\],;:=/-])")


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', a keyword, a punctuation char, or 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str):
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslError("E101", line, pos - start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        col = pos - start + 1
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind == "int":
            tokens.append(Token("int", m.group(), line, col))
        elif kind == "name":
            word = m.group()
            tokens.append(Token(word if word in KEYWORDS else "name", word, line, col))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - start + 1))
    return tokens


# ---------------------------------------------------------------------------
# parser

_EXPR_START = {"chain", "product", "finsupport", "finite_sets", "chang", "table", "name"}


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.known = set()

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _desc(self, t: Token) -> str:
        return "end of input" if t.kind == "eof" else repr(t.text)

    def error(self, expected, t: Token | None = None):
        t = t or self.tok
        raise DslError("E100", t.line, t.col, f"unexpected {self._desc(t)}", expected)

    def expect(self, *kinds) -> Token:
        t = self.tok
        if t.kind not in kinds:
            self.error(kinds)
        self.i += 1
        return t

    def accept(self, kind) -> Token | None:
        if self.tok.kind == kind:
            self.i += 1
            return self.toks[self.i - 1]
        return None

    def program(self) -> Program:
        stmts = []
        names = set()
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind == "algebra":
                stmt = self.algebra_decl()
            elif t.kind == "tribe":
                stmt = self.tribe_decl()
            else:
                self.error({"algebra", "tribe", "eof"})
            if stmt.name in names:
                raise DslError("E401", t.line, t.col, f"{stmt.name!r} is declared twice")
            names.add(stmt.name)
            if isinstance(stmt, AlgebraDecl):
                self.known.add(stmt.name)
            stmts.append(stmt)
        return Program(tuple(stmts))

    def algebra_decl(self) -> AlgebraDecl:
        self.expect("algebra")
        name = self.expect("name").text
        self.expect("=")
        return AlgebraDecl(name, self.expr())

    def tribe_decl(self) -> TribeDecl:
        self.expect("tribe")
        name = self.expect("name").text
        self.expect("on")
        self.expect("{")
        omega = [self.atom()]
        while self.accept(","):
            omega.append(self.atom())
        self.expect("}")
        if len(set(omega)) != len(omega):
            t = self.toks[self.i - 1]
            raise DslError("E301", t.line, t.col, "tribe domain lists a point twice")
        self.expect("=")
        self.expect("{")
        gens = []
        if self.tok.kind != "}":
            gens.append(self.fuzzy(len(omega)))
            while self.accept(","):
                gens.append(self.fuzzy(len(omega)))
        self.expect("}")
        return TribeDecl(name, tuple(omega), tuple(gens))

    def fuzzy(self, width: int) -> tuple:
        start = self.expect("(")
        vals = [self.rational()]
        while self.accept(","):
            vals.append(self.rational())
        self.expect(")")
        if len(vals) != width:
            raise DslError("E201", start.line, start.col, f"fuzzy set has {len(vals)} values for {width} points")
        return tuple(vals)

    def rational(self) -> Fraction:
        t = self.expect("int")
        num = int(t.text)
        if self.accept("/"):
            d = self.expect("int")
            if int(d.text) == 0:
                raise DslError("E202", d.line, d.col, "zero denominator")
            val = Fraction(num, int(d.text))
        else:
            val = Fraction(num)
        if val > 1:
            raise DslError("E202", t.line, t.col, f"value {val} is outside [0,1]")
        return val

    def atom(self) -> str:
        neg = self.accept("-")
        t = self.expect("name", "int")
        return ("-" if neg else "") + t.text

    def _args(self, head: Token, count: int, parse):
        self.expect("(")
        args = []
        if self.tok.kind != ")":
            args.append(parse())
            while self.accept(","):
                args.append(parse())
        self.expect(")")
        if len(args) != count:
            raise DslError("E200", head.line, head.col, f"{head.text} takes {count} argument(s), got {len(args)}")
        return args

    def _order(self) -> Token:
        return self.expect("int")

    def _checked_order(self, t: Token) -> int:
        n = int(t.text)
        if n < 1:
            raise DslError("E201", t.line, t.col, f"chain order must be at least 1, got {n}")
        return n

    def expr(self):
        t = self.tok
        if t.kind == "chain":
            self.i += 1
            (o,) = self._args(t, 1, self._order)
            return Chain(self._checked_order(o))
        if t.kind == "product":
            self.i += 1
            left, right = self._args(t, 2, self.expr)
            return Product(left, right)
        if t.kind == "finsupport":
            self.i += 1
            (inner,) = self._args(t, 1, self.expr)
            if not isinstance(inner, Chain):
                raise DslError("E203", t.line, t.col, "finsupport takes a chain")
            return FinSupport(inner.order)
        if t.kind == "finite_sets":
            self.i += 1
            return FiniteSets()
        if t.kind == "chang":
            self.i += 1
            return Chang()
        if t.kind == "table":
            self.i += 1
            return self.table(t)
        if t.kind == "name":
            self.i += 1
            if t.text not in self.known:
                raise DslError("E400", t.line, t.col, f"unknown algebra {t.text!r}")
            return Ref(t.text)
        self.error(_EXPR_START)

    def table(self, head: Token) -> Table:
        self.expect("{")
        fields = {}
        where = {}
        while self.tok.kind != "}":
            key = self.expect("elements", "zero", "oplus", "join", "leq")
            if key.kind in fields:
                raise DslError("E302", key.line, key.col, f"field {key.kind!r} given twice")
            self.expect(":")
            where[key.kind] = key
            if key.kind == "zero":
                fields["zero"] = self.atom()
            elif key.kind == "elements":
                self.expect("[")
                els = [self.atom()]
                while self.accept(","):
                    els.append(self.atom())
                self.expect("]")
                fields["elements"] = tuple(els)
            else:
                fields[key.kind] = self.matrix()
        self.expect("}")
        for need in ("elements", "zero", "oplus"):
            if need not in fields:
                raise DslError("E303", head.line, head.col, f"table is missing {need!r}")
        if ("join" in fields) == ("leq" in fields):
            raise DslError("E304", head.line, head.col, "table needs exactly one of 'join' or 'leq'")
        els = fields["elements"]
        if len(set(els)) != len(els):
            raise DslError("E305", where["elements"].line, where["elements"].col, "duplicate element")
        if fields["zero"] not in els:
            raise DslError("E306", where["zero"].line, where["zero"].col, f"zero {fields['zero']!r} is not an element")
        n = len(els)
        for key in ("oplus", "join", "leq"):
            if key not in fields:
                continue
            m = fields[key]
            t = where[key]
            if len(m) != n or any(len(r) != n for r in m):
                raise DslError("E307", t.line, t.col, f"{key} matrix must be {n}x{n}")
            allowed = {"0", "1"} if key == "leq" else set(els)
            for r in m:
                for v in r:
                    if v not in allowed:
                        raise DslError("E308", t.line, t.col, f"{key} entry {v!r} is not allowed")
        return Table(els, fields["zero"], fields["oplus"], fields.get("join"), fields.get("leq"))

    def matrix(self) -> tuple:
        self.expect("[")
        rows = [self.row()]
        while self.accept(";"):
            rows.append(self.row())
        self.expect("]")
        return tuple(rows)

    def row(self) -> tuple:
        vals = [self.atom()]
        while self.accept(","):
            vals.append(self.atom())
        return tuple(vals)


def parse_spec(text: str) -> Program:
    return _Parser(text).program()


# ---------------------------------------------------------------------------
# printer


def print_expr(e) -> str:
    if isinstance(e, Chain):
        return f"chain({e.order})"
    if isinstance(e, Product):
        return f"product({print_expr(e.left)}, {print_expr(e.right)})"
    if isinstance(e, FinSupport):
        return f"finsupport(chain({e.order}))"
    if isinstance(e, FiniteSets):
        return "finite_sets"
    if isinstance(e, Chang):
        return "chang"
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Table):
        lines = ["table {", f"  elements: [{', '.join(e.elements)}]", f"  zero: {e.zero}"]
        for key in ("oplus", "join", "leq"):
            m = getattr(e, key)
            if m is not None:
                body = "; ".join(", ".join(r) for r in m)
                lines.append(f"  {key}: [{body}]")
        lines.append("}")
        return "\n".join(lines)
    raise TypeError(f"not an expression: {e!r}")


def _print_frac(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def print_program(prog: Program) -> str:
    out = []
    for s in prog.stmts:
        if isinstance(s, AlgebraDecl):
            out.append(f"algebra {s.name} = {print_expr(s.expr)}")
        else:
            gens = ", ".join("(" + ", ".join(_print_frac(v) for v in g) + ")" for g in s.generators)
            out.append(f"tribe {s.name} on {{{', '.join(s.omega)}}} = {{{gens}}}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# evaluation


def build_expr(e, env: dict):
    from .algebra import FiniteEmvAlgebra, build_chain, product
    from .backends import chang_build, fs_build

    if isinstance(e, Chain):
        return build_chain(e.order)
    if isinstance(e, Product):
        return product(build_expr(e.left, env), build_expr(e.right, env))
    if isinstance(e, FinSupport):
        return fs_build(e.order)
    if isinstance(e, FiniteSets):
        return fs_build(1)
    if isinstance(e, Chang):
        return chang_build()
    if isinstance(e, Ref):
        return env[e.name]
    if isinstance(e, Table):
        idx = {v: i for i, v in enumerate(e.elements)}
        op = [[idx[v] for v in r] for r in e.oplus]
        kw = {}
        if e.join is not None:
            kw["join"] = [[idx[v] for v in r] for r in e.join]
        else:
            kw["leq"] = [[int(v) for v in r] for r in e.leq]
        return FiniteEmvAlgebra(e.elements, op, idx[e.zero], name="table", **kw)
    raise TypeError(f"not an expression: {e!r}")


def build_program(prog: Program) -> dict:
    """Evaluate declarations in order; returns name -> algebra or tribe handle."""
    from .tribes import generated_tribe

    env = {}
    for s in prog.stmts:
        if isinstance(s, AlgebraDecl):
            alg = build_expr(s.expr, env)
            if isinstance(s.expr, Table):
                alg.name = s.name
            env[s.name] = alg
        else:
            env[s.name] = generated_tribe(s.omega, s.generators, name=s.name)
    return env
