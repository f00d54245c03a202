"""epsilon-substitutions as partial models of the Skolemized language."""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Union

from .lang import (
    PREDICATES,
    ZERO,
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
    conj,
    is_canonical,
    negate,
    numeral,
    rank,
)


class _Default:
    """The default value ``?``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "?"

    __str__ = __repr__

    def __reduce__(self):
        return (_Default, ())


Q = _Default()

Value = Union[int, _Default]


def value_str(v: Value) -> str:
    return "?" if v is Q else str(v)


class EpsSubstitution(Mapping):
    """Immutable finite map from canonical Skolem terms to naturals or ``?``."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[App, Value] | Iterable[tuple[App, Value]] = ()):
        data = dict(entries)
        for k, v in data.items():
            if not is_canonical(k):
                raise ValueError(f"not a canonical term: {k}")
            if v is not Q and not (isinstance(v, int) and v >= 0):
                raise ValueError(f"bad value for {k}: {v!r}")
        self._entries = data
        self._hash = None

    def __getitem__(self, key):
        return self._entries[key]

    def __iter__(self) -> Iterator[App]:
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return key in self._entries

    def __eq__(self, other):
        if isinstance(other, EpsSubstitution):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{k} := {value_str(v)}" for k, v in self.sorted_items())
        return f"EpsSubstitution({{{body}}})"

    def extend(self, term: App, value: Value) -> "EpsSubstitution":
        """Copy with ``term`` mapped to ``value`` (overriding any entry)."""
        out = EpsSubstitution.__new__(EpsSubstitution)
        out._entries = {**self._entries, term: value}
        out._hash = None
        if not is_canonical(term):
            raise ValueError(f"not a canonical term: {term}")
        return out

    def sorted_items(self) -> list[tuple[App, Value]]:
        return sorted(self._entries.items(), key=lambda kv: str(kv[0]))

    def max_rank(self) -> int:
        return max((rank(k) for k in self._entries), default=0)


EMPTY = EpsSubstitution()


# --- evaluation ------------------------------------------------------------


def eval_term(S: Mapping, t: Term, total: bool = False) -> Term:
    """The extension S-hat of S to arbitrary closed terms.

    With ``total`` the standard extension is used: canonical terms outside the
    domain behave as if mapped to ``?``.
    """
    if t.value is not None:
        return t
    if isinstance(t, Succ):
        inner = eval_term(S, t.arg, total)
        if inner.value is not None:
            return numeral(inner.value + 1)
        return inner if inner is t.arg else Succ(inner)
    if isinstance(t, App):
        args = tuple(eval_term(S, a, total) for a in t.args)
        canon = App(t.fn, args)
        if any(a.value is None for a in args):
            return canon
        v = S.get(canon)
        if v is None:
            return ZERO if total else canon
        return ZERO if v is Q else numeral(v)
    if isinstance(t, Var):
        raise ValueError(f"free variable {t.name} in evaluated term")
    raise TypeError(f"not a term: {t!r}")


def eval_value(S: Mapping, t: Term, total: bool = False) -> int | None:
    return eval_term(S, t, total).value


def models(S: Mapping, f: Formula, total: bool = False) -> bool:
    if isinstance(f, (Atom, NegAtom)):
        vals = []
        for a in f.args:
            v = eval_term(S, a, total).value
            if v is None:
                return False
            vals.append(v)
        truth = PREDICATES[f.pred].holds(*vals)
        return truth if isinstance(f, Atom) else not truth
    if isinstance(f, And):
        return models(S, f.left, total) and models(S, f.right, total)
    if isinstance(f, Or):
        return models(S, f.left, total) or models(S, f.right, total)
    raise TypeError(f"not a formula: {f!r}")


def models_bar(S: Mapping, f: Formula) -> bool:
    """Satisfaction under the standard extension of S."""
    return models(S, f, total=True)


def decides(S: Mapping, f: Formula) -> bool:
    return models(S, f) or models(S, negate(f))


def unev(f, S: Mapping) -> list[App]:
    """Canonical terms blocking evaluation of ``f`` under S.

    These are the terms c(S-hat(s)) for occurrences c(s) whose arguments all
    evaluate to numerals while c(s) itself does not.  Order is
    leftmost-innermost, without repetition.
    """
    out: dict[App, None] = {}

    def visit(t: Term):
        if isinstance(t, Succ):
            visit(t.arg)
        elif isinstance(t, App):
            for a in t.args:
                visit(a)
            args = tuple(eval_term(S, a) for a in t.args)
            if all(a.value is not None for a in args):
                canon = App(t.fn, args)
                if canon not in S:
                    out.setdefault(canon)

    def walk(g):
        if isinstance(g, (And, Or)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Atom, NegAtom)):
            for a in g.args:
                visit(a)
        else:
            visit(g)

    walk(f)
    return list(out)


def restrict_rank(S: EpsSubstitution, r: int) -> EpsSubstitution:
    return EpsSubstitution({k: v for k, v in S.items() if rank(k) <= r})


def min_witness_formula(fn: SkolemFunction, v: int, params) -> Formula:
    """phi[v, t] together with not phi[u, t] for every u < v."""
    params = tuple(params)
    parts = [fn.instance(numeral(v), params)]
    parts += [negate(fn.instance(numeral(u), params)) for u in range(v)]
    return conj(parts)


def crucial_set(S: Mapping) -> list[Formula]:
    return [min_witness_formula(k.fn, v, k.args) for k, v in S.items() if v is not Q]


def is_correct(S: Mapping) -> bool:
    return all(models_bar(S, f) for f in crucial_set(S))


def incorrect_entries(S: Mapping) -> list[App]:
    return [k for k, v in S.items() if v is not Q and not models_bar(S, min_witness_formula(k.fn, v, k.args))]
