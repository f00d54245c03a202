"""Instance files: a small line-oriented language for Skolem functions and critical formulas.

::

    # comments run to the end of the line
    skolem c(0) := exists x. x = 2
    skolem d(1) := exists x. y1 < x & !x = 7     # parameters are y1..yk (or y when k = 1)
    crit existence c() witness 2
    crit induction d(3) bound 5
    crit pred S S 0

Terms are ``0``, decimal numerals, ``S t``, declared names applied to
arguments, or anonymous symbols ``c_{exists x. formula}(args)``.  ``&`` binds
tighter than ``|`` and both associate to the right.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .critical import CriticalFormula, Existence, Induction, Predecessor
from .lang import (
    PREDICATES,
    And,
    App,
    Atom,
    Formula,
    NegAtom,
    Or,
    SkolemFunction,
    Succ,
    Term,
    Var,
    negate,
    numeral,
    param_name,
    substitute,
)
from .subst import Q, EpsSubstitution, value_str


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


@dataclass
class Instance:
    skolems: dict[str, SkolemFunction] = field(default_factory=dict)
    crits: list[CriticalFormula] = field(default_factory=list)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#.*)
  | (?P<anon>c_\{)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|:=|[()&|!=<,.}])
""",
    re.VERBOSE,
)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1) -> list[Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Tok(kind, m.group(), line, pos + 1))
        pos = m.end()
    out.append(Tok("eof", "", line, len(text) + 1))
    return out


class _Parser:
    def __init__(self, toks: list[Tok], skolems: dict[str, SkolemFunction]):
        self.toks = toks
        self.i = 0
        self.skolems = skolems
        self.scopes: list = []

    # -- token helpers --

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Tok:
        tok = self.tok
        if not self.accept(text):
            self.error(f"expected {text!r}, found {tok.text or 'end of line'!r}")
        return tok

    def ident(self) -> Tok:
        tok = self.tok
        if tok.kind != "ident":
            self.error(f"expected a name, found {tok.text or 'end of line'!r}")
        self.i += 1
        return tok

    def number(self) -> int:
        tok = self.tok
        if tok.kind != "num":
            self.error(f"expected a number, found {tok.text or 'end of line'!r}")
        self.i += 1
        return int(tok.text)

    def end(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")

    # -- formulas --

    def formula(self) -> Formula:
        left = self.conj()
        if self.accept("|"):
            return Or(left, self.formula())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        if self.accept("&"):
            return And(left, self.conj())
        return left

    def unary(self) -> Formula:
        if self.accept("!"):
            return negate(self.unary())
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if (
            tok.kind == "ident"
            and tok.text in PREDICATES
            and tok.text not in self.skolems
            and self.toks[self.i + 1].text == "("
        ):
            self.i += 2
            args = self.term_list()
            return self._make_atom(tok, tok.text, args)
        left = self.term()
        op = self.tok
        if op.text not in ("=", "<", "<="):
            self.error(f"expected a comparison, found {op.text or 'end of line'!r}")
        self.i += 1
        return self._make_atom(op, op.text, (left, self.term()))

    def _make_atom(self, tok, pred, args) -> Atom:
        p = PREDICATES[pred]
        if p.arity != len(args):
            self.error(f"predicate {pred!r} takes {p.arity} arguments", tok)
        return Atom(pred, tuple(args))

    # -- terms --

    def term_list(self) -> tuple[Term, ...]:
        """Arguments after an opening parenthesis, through the closing one."""
        args = []
        if not self.accept(")"):
            args.append(self.term())
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
        return tuple(args)

    def term(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return numeral(int(tok.text))
        if tok.kind == "anon":
            self.i += 1
            self.expect("exists")
            bound = self.ident().text
            self.expect(".")
            self.scopes.append(_Scope({bound}))
            matrix = self.formula()
            self.scopes.pop()
            self.expect("}")
            self.expect("(")
            args = self.term_list()
            fn = self._function(tok, matrix, bound, len(args))
            return App(fn, args)
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "S":
                return Succ(self.term())
            if self.accept("("):
                fn = self.skolems.get(tok.text)
                if fn is None:
                    self.error(f"undeclared Skolem function {tok.text!r}", tok)
                args = self.term_list()
                if len(args) != fn.arity:
                    self.error(f"{tok.text} takes {fn.arity} arguments, got {len(args)}", tok)
                return App(fn, args)
            if self.scopes and tok.text in self.scopes[-1]:
                return Var(tok.text)
            if tok.text in self.skolems:
                self.error(f"{tok.text} needs an argument list", tok)
            self.error(f"unknown variable {tok.text!r}", tok)
        self.error(f"expected a term, found {tok.text or 'end of line'!r}")

    def _function(self, tok, matrix, bound, arity, alias=False) -> SkolemFunction:
        params = [param_name(i) for i in range(arity)]
        if alias:
            matrix = substitute(matrix, {"y": Var("y1")})
        try:
            return SkolemFunction.from_matrix(matrix, bound, params)
        except ValueError as exc:
            self.error(str(exc), tok)


class _Scope:
    """Variables visible inside a matrix: the bound variable and y1, y2, ..."""

    def __init__(self, names):
        self.names = set(names)

    def __contains__(self, name):
        return name in self.names or bool(re.fullmatch(r"y[1-9][0-9]*", name))


def _parse_line(p: _Parser, inst: Instance):
    kw = p.ident()
    if kw.text == "skolem":
        name = p.ident()
        if name.text in inst.skolems:
            p.error(f"{name.text} declared twice", name)
        if name.text == "S":
            p.error("S is reserved", name)
        p.expect("(")
        arity = p.number()
        p.expect(")")
        p.expect(":=")
        p.expect("exists")
        bound = p.ident().text
        p.expect(".")
        names = {bound} | {param_name(i) for i in range(arity)}
        if arity == 1:
            names.add("y")
        p.scopes.append(names)
        matrix = p.formula()
        p.scopes.pop()
        p.end()
        inst.skolems[name.text] = p._function(name, matrix, bound, arity, alias=arity == 1)
        return
    if kw.text != "crit":
        p.error(f"expected 'skolem' or 'crit', found {kw.text!r}", kw)
    kind = p.ident()
    if kind.text == "pred":
        subject = p.term()
        p.end()
        inst.crits.append(Predecessor(subject))
        return
    if kind.text not in ("existence", "induction"):
        p.error(f"unknown critical formula kind {kind.text!r}", kind)
    fn_tok = p.tok
    app = p.term()
    if not isinstance(app, App):
        p.error("expected a Skolem function applied to its parameters", fn_tok)
    p.expect("witness" if kind.text == "existence" else "bound")
    t = p.term()
    p.end()
    cls = Existence if kind.text == "existence" else Induction
    inst.crits.append(cls(app.fn, t, app.args))


def parse_instance(text: str) -> Instance:
    inst = Instance()
    for n, line in enumerate(text.splitlines(), start=1):
        toks = tokenize(line, n)
        if toks[0].kind == "eof":
            continue
        _parse_line(_Parser(toks, inst.skolems), inst)
    return inst


def parse_term(text: str, skolems: dict[str, SkolemFunction] | None = None) -> Term:
    p = _Parser(tokenize(text), skolems or {})
    t = p.term()
    p.end()
    return t


def parse_formula(text: str, skolems: dict[str, SkolemFunction] | None = None, variables=()) -> Formula:
    p = _Parser(tokenize(text), skolems or {})
    if variables:
        p.scopes.append(set(variables))
    f = p.formula()
    p.end()
    return f


# --- printing ---------------------------------------------------------------


def term_text(t: Term, names: dict | None = None) -> str:
    names = names or {}
    if t.value is not None:
        return str(t.value)
    if isinstance(t, Succ):
        return f"S {term_text(t.arg, names)}"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, App):
        head = names.get(t.fn) or function_text(t.fn, names)
        return f"{head}({', '.join(term_text(a, names) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def function_text(fn: SkolemFunction, names: dict | None = None) -> str:
    return f"c_{{exists x. {formula_text(fn.matrix, names)}}}"


def formula_text(f: Formula, names: dict | None = None) -> str:
    if isinstance(f, (Atom, NegAtom)):
        bang = "!" if isinstance(f, NegAtom) else ""
        args = [term_text(a, names) for a in f.args]
        if len(args) == 2 and not f.pred.isidentifier():
            return f"{bang}{args[0]} {f.pred} {args[1]}"
        return f"{bang}{f.pred}({', '.join(args)})"
    if isinstance(f, And):
        return f"{_paren(f.left, names, (Or, And))} & {_paren(f.right, names, (Or,))}"
    if isinstance(f, Or):
        left = formula_text(f.left, names)
        if isinstance(f.left, Or):
            left = f"({left})"
        return f"{left} | {formula_text(f.right, names)}"
    raise TypeError(f"not a formula: {f!r}")


def _paren(f, names, kinds):
    s = formula_text(f, names)
    return f"({s})" if isinstance(f, kinds) else s


def crit_text(cr: CriticalFormula, names: dict | None = None) -> str:
    if isinstance(cr, Predecessor):
        return f"crit pred {term_text(cr.subject, names)}"
    app = term_text(App(cr.fn, cr.params), names)
    if isinstance(cr, Existence):
        return f"crit existence {app} witness {term_text(cr.witness, names)}"
    return f"crit induction {app} bound {term_text(cr.bound, names)}"


def print_instance(inst: Instance) -> str:
    names: dict = {}
    lines = []
    for name, fn in inst.skolems.items():
        lines.append(f"skolem {name}({fn.arity}) := exists x. {formula_text(fn.matrix, names)}")
        names[fn] = name
    lines += [crit_text(cr, names) for cr in inst.crits]
    return "\n".join(lines) + "\n"


def substitution_lines(S: EpsSubstitution) -> list[str]:
    """``term := value`` lines in a fixed order."""
    rows = [(term_text(k), value_str(v)) for k, v in S.items()]
    return [f"{t} := {v}" for t, v in sorted(rows)]


def parse_substitution(text: str, skolems: dict[str, SkolemFunction] | None = None) -> EpsSubstitution:
    """Read ``term := value`` lines; other record lines are ignored."""
    entries = {}
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line.startswith("entry "):
            line = line[len("entry "):]
        if ":=" not in line:
            continue
        lhs, rhs = line.rsplit(":=", 1)
        try:
            t = parse_term(lhs.strip(), skolems)
        except ParseError as exc:
            raise ParseError(f"bad term: {exc}", n, 1) from None
        rhs = rhs.strip()
        if rhs == "?":
            v = Q
        elif rhs.isdigit():
            v = int(rhs)
        else:
            raise ParseError(f"bad value {rhs!r}", n, line.index(":=") + 3)
        if not isinstance(t, App) or any(a.value is None for a in t.args):
            raise ParseError("substitution keys must be canonical terms", n, 1)
        entries[t] = v
    return EpsSubstitution(entries)
