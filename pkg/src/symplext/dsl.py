"""Text format for models.

One statement per line (or separated by ``;``), ``#`` starts a comment::

    dga T2xCP1
    gen t11 1
    gen t12 1
    gen b 2
    gen y 3
    d y = b^2
    symplectic w = b + t11*t12
    torus 1
    base S2
    classify t11@1 -> 1

Grammar (LL(1))::

    stmt     := 'dga' NAME | 'gen' NAME INT | 'd' NAME '=' expr
              | 'symplectic' NAME '=' expr | 'torus' INT
              | 'base' ('S2' | 'basis' NAME+) | 'classify' TARGET '->' expr
    expr     := sign? term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' INT)?
    atom     := INT ('/' INT)? | NAME | '(' expr ')'

``TARGET`` is a single whitespace-free token naming a basis element of
H²(Baut₁), such as ``t11@1`` or ``y@t11*t12``.  Over ``base S2`` the H²
basis is the single class ``u`` and a bare number c stands for c·u.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import InputError
from .gca import FreeGca, GcaPresentation, Poly

S2_CLASS = "u"


class DslError(InputError):
    """Parse or semantic error with a source location."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        text = f"line {line}, col {col}: {message}"
        if expected:
            text += f" (expected {' or '.join(expected)})"
        super().__init__(text)


@dataclass(frozen=True)
class Token:
    kind: str      # NAME INT OP EOS
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<arrow>->)
  | (?P<int>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[-+*/^()=])
""", re.VERBOSE)


def _tokenize_statement(text: str, line: int, col0: int) -> list[Token]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DslError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        if kind != "ws":
            k = {"arrow": "OP", "int": "INT", "name": "NAME", "op": "OP"}[kind]
            toks.append(Token(k, m.group(), line, col0 + pos))
        pos = m.end()
    toks.append(Token("EOS", "", line, col0 + len(text)))
    return toks


def _statements(source: str) -> Iterator[tuple[str, int, int]]:
    """Yield (text, line, column) for every non-empty statement."""
    for lineno, raw in enumerate(source.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        col = 1
        for piece in body.split(";"):
            stripped = piece.strip()
            if stripped:
                yield stripped, lineno, col + (len(piece) - len(piece.lstrip()))
            col += len(piece) + 1


# -- expression AST ----------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int
    col: int


@dataclass(frozen=True)
class Var:
    name: str
    line: int
    col: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    line: int
    col: int


@dataclass(frozen=True)
class Neg:
    operand: object
    line: int
    col: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    line: int
    col: int


class _ExprParser:
    def __init__(self, tokens: list[Token], pos: int = 0):
        self.toks = tokens
        self.pos = pos

    @property
    def cur(self) -> Token:
        return self.toks[self.pos]

    def take(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            want = what or (repr(text) if text else kind.lower())
            got = "end of statement" if t.kind == "EOS" else repr(t.text)
            raise DslError(f"unexpected {got}", t.line, t.col, (want,))
        return self.take()

    def expr(self):
        t = self.cur
        if t.kind == "OP" and t.text in ("+", "-"):
            self.take()
            node = self.term()
            if t.text == "-":
                node = Neg(node, t.line, t.col)
        else:
            node = self.term()
        while self.cur.kind == "OP" and self.cur.text in ("+", "-"):
            op = self.take()
            node = BinOp(op.text, node, self.term(), op.line, op.col)
        return node

    def term(self):
        node = self.factor()
        while self.cur.kind == "OP" and self.cur.text == "*":
            op = self.take()
            node = BinOp("*", node, self.factor(), op.line, op.col)
        return node

    def factor(self):
        node = self.atom()
        if self.cur.kind == "OP" and self.cur.text == "^":
            op = self.take()
            e = self.expect("INT", what="integer exponent")
            node = Pow(node, int(e.text), op.line, op.col)
        return node

    def atom(self):
        t = self.cur
        if t.kind == "INT":
            self.take()
            value = Fraction(int(t.text))
            if self.cur.kind == "OP" and self.cur.text == "/":
                self.take()
                den = self.expect("INT", what="integer denominator")
                if int(den.text) == 0:
                    raise DslError("division by zero", den.line, den.col)
                value = value / int(den.text)
            return Num(value, t.line, t.col)
        if t.kind == "NAME":
            self.take()
            return Var(t.text, t.line, t.col)
        if t.kind == "OP" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect("OP", ")")
            return node
        got = "end of statement" if t.kind == "EOS" else repr(t.text)
        raise DslError(f"unexpected {got}", t.line, t.col, ("number", "name", "'('"))


def evaluate(node, alg: FreeGca) -> Poly:
    """Evaluate an expression AST in ``alg``; undeclared names are located errors."""
    if isinstance(node, Num):
        return alg.const(node.value)
    if isinstance(node, Var):
        if node.name not in alg.index:
            raise DslError(f"undeclared generator {node.name!r}", node.line, node.col)
        return alg.gen(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, alg)
    if isinstance(node, Pow):
        return evaluate(node.base, alg) ** node.exponent
    if isinstance(node, BinOp):
        a = evaluate(node.left, alg)
        b = evaluate(node.right, alg)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    raise TypeError(node)


def _first_pos(node) -> tuple[int, int]:
    while isinstance(node, BinOp):
        node = node.left
    return node.line, node.col


# -- documents ---------------------------------------------------------------

@dataclass
class ModelDocument:
    name: str | None
    generators: list[tuple[str, int]]
    differentials: dict[str, Poly]
    symplectic: tuple[str, Poly] | None = None
    torus: int | None = None
    base: tuple[str, ...] | None = None
    base_is_s2: bool = False
    classify: dict[str, dict[str, Fraction]] = field(default_factory=dict)

    @property
    def algebra(self) -> FreeGca:
        return FreeGca(self.generators)

    @property
    def presentation(self) -> GcaPresentation:
        alg = self.algebra
        return GcaPresentation(alg, {n: self._move(p, alg) for n, p in self.differentials.items()},
                               name=self.name)

    @property
    def omega(self) -> Poly | None:
        if self.symplectic is None:
            return None
        return self._move(self.symplectic[1], self.algebra)

    @staticmethod
    def _move(p: Poly, alg: FreeGca) -> Poly:
        return Poly(alg, p.terms)

    def __eq__(self, other):
        if not isinstance(other, ModelDocument):
            return NotImplemented
        return (self.name == other.name and self.generators == other.generators
                and {n: str(p) for n, p in self.differentials.items()}
                == {n: str(p) for n, p in other.differentials.items()}
                and (None if self.symplectic is None else (self.symplectic[0], str(self.symplectic[1])))
                == (None if other.symplectic is None else (other.symplectic[0], str(other.symplectic[1])))
                and self.torus == other.torus and self.base == other.base
                and self.base_is_s2 == other.base_is_s2 and self.classify == other.classify)


def parse(text: str) -> ModelDocument:
    name = None
    gens: list[tuple[str, int]] = []
    gen_pos: dict[str, tuple[int, int]] = {}
    d_ast: dict[str, tuple[object, Token]] = {}
    sym_ast = None
    torus = None
    base = None
    base_is_s2 = False
    cls_ast: list[tuple[str, object, int, int]] = []
    keywords = ("dga", "gen", "d", "symplectic", "torus", "base", "classify")

    for stmt, line, col in _statements(text):
        head = stmt.split(None, 1)[0]
        if head == "classify":
            rest = stmt[len("classify"):]
            if "->" not in rest:
                raise DslError("missing '->'", line, col + len(stmt), ("'->'",))
            target_raw, rhs = rest.split("->", 1)
            target = target_raw.strip()
            tcol = col + len("classify") + (len(target_raw) - len(target_raw.lstrip()))
            if not target or any(ch.isspace() for ch in target):
                raise DslError("classify target must be one token", line, tcol, ("basis element name",))
            if target in {c[0] for c in cls_ast}:
                raise DslError(f"duplicate classify entry for {target!r}", line, tcol)
            rcol = col + len(stmt) - len(rhs)
            p = _ExprParser(_tokenize_statement(rhs, line, rcol))
            node = p.expr()
            p.expect("EOS", what="end of statement")
            cls_ast.append((target, node, line, tcol))
            continue
        toks = _tokenize_statement(stmt, line, col)
        p = _ExprParser(toks)
        kw = p.cur
        if kw.kind != "NAME" or kw.text not in keywords:
            raise DslError(f"unknown statement {kw.text!r}", kw.line, kw.col, tuple(repr(k) for k in keywords))
        p.take()
        if kw.text == "dga":
            if name is not None:
                raise DslError("duplicate dga name", kw.line, kw.col)
            name = p.expect("NAME", what="model name").text
        elif kw.text == "gen":
            g = p.expect("NAME", what="generator name")
            deg = p.expect("INT", what="positive degree")
            if g.text in gen_pos:
                raise DslError(f"duplicate generator {g.text!r}", g.line, g.col)
            if int(deg.text) < 1:
                raise DslError("generator degree must be positive", deg.line, deg.col)
            gens.append((g.text, int(deg.text)))
            gen_pos[g.text] = (g.line, g.col)
        elif kw.text in ("d", "symplectic"):
            g = p.expect("NAME", what="generator name" if kw.text == "d" else "form name")
            p.expect("OP", "=")
            node = p.expr()
            if kw.text == "d":
                if g.text in d_ast:
                    raise DslError(f"duplicate differential for {g.text!r}", g.line, g.col)
                d_ast[g.text] = (node, g)
            else:
                if sym_ast is not None:
                    raise DslError("duplicate symplectic declaration", kw.line, kw.col)
                sym_ast = (g.text, node)
        elif kw.text == "torus":
            if torus is not None:
                raise DslError("duplicate torus declaration", kw.line, kw.col)
            torus = int(p.expect("INT", what="torus rank").text)
        elif kw.text == "base":
            if base is not None:
                raise DslError("duplicate base declaration", kw.line, kw.col)
            t = p.cur
            if t.kind == "NAME" and t.text == "S2":
                p.take()
                base, base_is_s2 = (S2_CLASS,), True
            elif t.kind == "NAME" and t.text == "basis":
                p.take()
                names = [p.expect("NAME", what="basis name").text]
                while p.cur.kind == "NAME":
                    names.append(p.take().text)
                if len(set(names)) != len(names):
                    raise DslError("duplicate basis name", t.line, t.col)
                base = tuple(names)
            else:
                raise DslError("bad base", t.line, t.col, ("'S2'", "'basis'"))
        p.expect("EOS", what="end of statement")

    alg = FreeGca(gens)
    diffs: dict[str, Poly] = {}
    for gname, (node, tok) in d_ast.items():
        if gname not in alg.index:
            raise DslError(f"undeclared generator {gname!r}", tok.line, tok.col)
        value = evaluate(node, alg)
        want = alg.degree_of(gname) + 1
        if value.terms and value.degrees() != {want}:
            line, col = _first_pos(node)
            raise DslError(f"d({gname}) = {value} is not homogeneous of degree {want}", line, col)
        if value.terms:
            diffs[gname] = value
    ordered = {n: diffs[n] for n in alg.names if n in diffs}
    symplectic = None
    if sym_ast is not None:
        value = evaluate(sym_ast[1], alg)
        if value.degrees() != {2}:
            line, col = _first_pos(sym_ast[1])
            raise DslError(f"symplectic class {value} must be homogeneous of degree 2", line, col)
        symplectic = (sym_ast[0], value)
    classify: dict[str, dict[str, Fraction]] = {}
    if cls_ast and base is None:
        _, _, line, col = cls_ast[0]
        raise DslError("classify needs a base declaration", line, col, ("'base'",))
    if cls_ast:
        halg = FreeGca([(n, 2) for n in base])
        for target, node, line, col in cls_ast:
            value = evaluate(node, halg)
            vec: dict[str, Fraction] = {}
            for mono, c in value.terms.items():
                if not mono and base_is_s2:
                    vec[S2_CLASS] = vec.get(S2_CLASS, 0) + c
                elif len(mono) == 1 and mono[0][1] == 1:
                    nm = base[mono[0][0]]
                    vec[nm] = vec.get(nm, 0) + c
                else:
                    l, c0 = _first_pos(node)
                    raise DslError("classify value must be linear in the base classes", l, c0)
            classify[target] = {k: v for k, v in vec.items() if v}
    return ModelDocument(name, gens, ordered, symplectic, torus, base, base_is_s2, classify)


def _fmt_linear(vec: dict[str, Fraction], names: tuple[str, ...]) -> str:
    halg = FreeGca([(n, 2) for n in names])
    p = halg.zero()
    for n, c in vec.items():
        p = p + halg.gen(n).scale(c)
    return str(p)


def to_text(doc: ModelDocument) -> str:
    """Canonical form: parse(to_text(doc)) == doc and to_text is idempotent."""
    out = []
    if doc.name is not None:
        out.append(f"dga {doc.name}")
    out += [f"gen {n} {d}" for n, d in doc.generators]
    out += [f"d {n} = {p}" for n, p in doc.differentials.items()]
    if doc.symplectic is not None:
        out.append(f"symplectic {doc.symplectic[0]} = {doc.symplectic[1]}")
    if doc.torus is not None:
        out.append(f"torus {doc.torus}")
    if doc.base is not None:
        out.append("base S2" if doc.base_is_s2 else "base basis " + " ".join(doc.base))
    for target, vec in doc.classify.items():
        out.append(f"classify {target} -> {_fmt_linear(vec, doc.base)}")
    return "\n".join(out) + "\n"
