"""Terms and formulas of the Skolemized quantifier-free language.

Variables only ever occur inside Skolem-function matrices, where the bound
variable is always renamed to ``x`` and the parameters to ``y1 .. yk``.
Everything the engine evaluates is closed.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Union

BOUND = "x"


def param_name(i: int) -> str:
    return f"y{i + 1}"


# --- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    value: int = field(default=0, init=False, compare=False, repr=False)

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Succ:
    arg: "Term"
    # int when the term is a numeral, else None
    value: int | None = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.arg.value is not None:
            object.__setattr__(self, "value", self.arg.value + 1)

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return f"S {self.arg}"


@dataclass(frozen=True)
class Var:
    name: str
    value: None = field(default=None, init=False, compare=False, repr=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fn: "SkolemFunction"
    args: tuple["Term", ...]
    value: None = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.args) != self.fn.arity:
            raise ValueError(f"{self.fn.name} expects {self.fn.arity} arguments, got {len(self.args)}")

    def __str__(self) -> str:
        return f"{self.fn.name}({', '.join(map(str, self.args))})"


Term = Union[Zero, Succ, Var, App]

ZERO = Zero()


@lru_cache(maxsize=None)
def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are non-negative")
    return ZERO if n == 0 else Succ(numeral(n - 1))


def is_numeral(t: Term) -> bool:
    return t.value is not None


def is_canonical(t: Term) -> bool:
    return isinstance(t, App) and all(a.value is not None for a in t.args)


# --- formulas --------------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    name: str
    arity: int
    holds: Callable[..., bool] = field(compare=False, repr=False)


PREDICATES: dict[str, Predicate] = {}


def register_predicate(name: str, arity: int, holds: Callable[..., bool]) -> Predicate:
    """Add a total decidable predicate on naturals to the vocabulary."""
    pred = Predicate(name, arity, holds)
    PREDICATES[name] = pred
    return pred


register_predicate("=", 2, operator.eq)
register_predicate("<", 2, operator.lt)
register_predicate("<=", 2, operator.le)


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return _atom_str(self.pred, self.args)


@dataclass(frozen=True)
class NegAtom:
    pred: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return "!" + _atom_str(self.pred, self.args)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"{_wrap(self.left, (Or, And))} & {_wrap(self.right, Or)}"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        # right associative, so only a left Or needs parentheses
        return f"{_wrap(self.left, Or)} | {self.right}"


Formula = Union[Atom, NegAtom, And, Or]


def _atom_str(pred: str, args: tuple[Term, ...]) -> str:
    if len(args) == 2 and not pred.isidentifier():
        return f"{args[0]} {pred} {args[1]}"
    return f"{pred}({', '.join(map(str, args))})"


def _wrap(f: Formula, kind: type) -> str:
    return f"({f})" if isinstance(f, kind) else str(f)


def atom(pred: str, *args: Term) -> Atom:
    p = PREDICATES.get(pred)
    if p is None:
        raise ValueError(f"unknown predicate {pred!r}")
    if p.arity != len(args):
        raise ValueError(f"predicate {pred!r} expects {p.arity} arguments")
    return Atom(pred, tuple(args))


def eq(a: Term, b: Term) -> Atom:
    return atom("=", a, b)


def lt(a: Term, b: Term) -> Atom:
    return atom("<", a, b)


def le(a: Term, b: Term) -> Atom:
    return atom("<=", a, b)


def negate(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return NegAtom(f.pred, f.args)
    if isinstance(f, NegAtom):
        return Atom(f.pred, f.args)
    if isinstance(f, And):
        return Or(negate(f.left), negate(f.right))
    if isinstance(f, Or):
        return And(negate(f.left), negate(f.right))
    raise TypeError(f"not a formula: {f!r}")


def implies(a: Formula, b: Formula) -> Formula:
    return Or(negate(a), b)


def conj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


# --- Skolem functions ------------------------------------------------------


class SkolemFunction:
    """The function symbol ``c_{exists x. matrix}`` of a given arity.

    Two symbols are the same iff their canonically renamed matrices and
    arities coincide.
    """

    __slots__ = ("matrix", "arity", "_hash", "_rank", "_name")

    def __init__(self, matrix: Formula, arity: int):
        allowed = {BOUND} | {param_name(i) for i in range(arity)}
        stray = free_vars(matrix) - allowed
        if stray:
            raise ValueError(f"matrix has free variables outside x, y1..y{arity}: {sorted(stray)}")
        self.matrix = matrix
        self.arity = arity
        self._hash = hash((matrix, arity))
        self._rank = None
        self._name = None

    @classmethod
    def from_matrix(cls, matrix: Formula, bound: str = BOUND, params=()) -> "SkolemFunction":
        """Build from a matrix written with arbitrary variable names."""
        ren = {bound: Var(BOUND)}
        ren.update({p: Var(param_name(i)) for i, p in enumerate(params)})
        return cls(substitute(matrix, ren), len(params))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SkolemFunction):
            return NotImplemented
        return self._hash == other._hash and self.arity == other.arity and self.matrix == other.matrix

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SkolemFunction({self.name}, arity={self.arity})"

    @property
    def name(self) -> str:
        if self._name is None:
            self._name = f"c_{{exists x. {self.matrix}}}"
        return self._name

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = 1 + rank(self.matrix)
        return self._rank

    def __call__(self, *args: Term) -> App:
        return App(self, tuple(args))

    def instance(self, x: Term, args) -> Formula:
        """The matrix with ``x`` and the parameters replaced."""
        args = tuple(args)
        if len(args) != self.arity:
            raise ValueError(f"{self.name} expects {self.arity} arguments, got {len(args)}")
        env = {BOUND: x}
        env.update({param_name(i): a for i, a in enumerate(args)})
        return substitute(self.matrix, env)

    def normalized(self) -> bool:
        """True iff the matrix at x = y1 = ... = 0 has no closed Skolem term."""
        inst = self.instance(ZERO, [ZERO] * self.arity)
        return not any(isinstance(t, App) for t in subterms(inst))


def expand_exists(fn: SkolemFunction, args) -> Formula:
    """``exists x. phi[x, args]`` as an abbreviation: phi[c(args), args]."""
    args = tuple(args)
    return fn.instance(App(fn, args), args)


# --- traversal -------------------------------------------------------------


def substitute(e, env: dict[str, Term]):
    """Replace variables by terms; Skolem symbols are opaque."""
    if isinstance(e, Var):
        return env.get(e.name, e)
    if isinstance(e, Zero):
        return e
    if isinstance(e, Succ):
        inner = substitute(e.arg, env)
        return e if inner is e.arg else Succ(inner)
    if isinstance(e, App):
        return App(e.fn, tuple(substitute(a, env) for a in e.args))
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(substitute(a, env) for a in e.args))
    if isinstance(e, NegAtom):
        return NegAtom(e.pred, tuple(substitute(a, env) for a in e.args))
    if isinstance(e, (And, Or)):
        return type(e)(substitute(e.left, env), substitute(e.right, env))
    raise TypeError(f"cannot substitute into {e!r}")


def atoms(f: Formula) -> Iterator[Atom | NegAtom]:
    if isinstance(f, (And, Or)):
        yield from atoms(f.left)
        yield from atoms(f.right)
    else:
        yield f


def subterms(e) -> Iterator[Term]:
    """All term occurrences, arguments before the application holding them."""
    if isinstance(e, (And, Or)):
        yield from subterms(e.left)
        yield from subterms(e.right)
    elif isinstance(e, (Atom, NegAtom, App)):
        for a in e.args:
            yield from subterms(a)
        if isinstance(e, App):
            yield e
    elif isinstance(e, Succ):
        yield from subterms(e.arg)
        yield e
    else:
        yield e


def free_vars(e) -> set[str]:
    return {t.name for t in subterms(e) if isinstance(t, Var)}


def rank(e) -> int:
    if isinstance(e, SkolemFunction):
        return e.rank
    if isinstance(e, (Zero, Var)):
        return 0
    if isinstance(e, Succ):
        return rank(e.arg)
    if isinstance(e, App):
        return max([e.fn.rank] + [rank(a) for a in e.args])
    if isinstance(e, (Atom, NegAtom)):
        return max((rank(a) for a in e.args), default=0)
    if isinstance(e, (And, Or)):
        return max(rank(e.left), rank(e.right))
    raise TypeError(f"no rank for {e!r}")
