"""Critical formulas: existence, least-witness induction and predecessor.

Every critical formula has the shape ``hypothesis -> psi[c]`` where ``c`` is
the key term ``key_fn(params)`` and ``psi[x]`` is the key function's matrix
at ``x`` and the parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Mapping, Sequence

from .lang import (
    ZERO,
    And,
    App,
    Formula,
    SkolemFunction,
    Succ,
    Term,
    Var,
    eq,
    implies,
    is_canonical,
    negate,
    numeral,
    rank,
)
from .subst import Q, eval_term, models, models_bar, unev


class WitnessError(ValueError):
    """Witness search asked about a critical formula S does not falsify."""


# c_{exists x. y1 = S x}
PRED_FN = SkolemFunction(eq(Var("y1"), Succ(Var("x"))), 1)


@lru_cache(maxsize=None)
def least_witness_fn(fn: SkolemFunction) -> SkolemFunction:
    """c_{exists x. phi(x) & !phi(S x)} for phi the matrix of ``fn``."""
    x = Var("x")
    params = [Var(f"y{i + 1}") for i in range(fn.arity)]
    body = And(fn.instance(x, params), negate(fn.instance(Succ(x), params)))
    return SkolemFunction(body, fn.arity)


class CriticalFormula:
    key_fn: SkolemFunction
    params: tuple[Term, ...]

    @property
    def hypothesis(self) -> Formula:
        raise NotImplementedError

    @property
    def key_term(self) -> App:
        return App(self.key_fn, self.params)

    def psi(self, x: Term) -> Formula:
        return self.key_fn.instance(x, self.params)

    def formula(self, c: Term | None = None) -> Formula:
        """The implication itself, or with the key term replaced by ``c``."""
        return implies(self.hypothesis, self.psi(self.key_term if c is None else c))

    @property
    def rank(self) -> int:
        return max(rank(self.hypothesis), rank(self.key_term))

    def reduce(self, S: Mapping) -> "CriticalFormula":
        raise NotImplementedError

    def witness_bound(self) -> int | None:
        """Upper bound for the least witness once the formula is ground."""
        raise NotImplementedError


@dataclass(frozen=True)
class Existence(CriticalFormula):
    """phi[s, t] -> phi[c(t), t]."""

    fn: SkolemFunction
    witness: Term
    params: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if len(self.params) != self.fn.arity:
            raise ValueError("parameter count does not match the Skolem function")

    @property
    def key_fn(self):
        return self.fn

    @property
    def hypothesis(self):
        return self.fn.instance(self.witness, self.params)

    def reduce(self, S):
        return replace(self, witness=eval_term(S, self.witness), params=tuple(eval_term(S, t) for t in self.params))

    def witness_bound(self):
        return self.witness.value


@dataclass(frozen=True)
class Induction(CriticalFormula):
    """phi[0, t] & !phi[s, t] -> phi[c(t), t] & !phi[S c(t), t].

    ``fn`` carries phi; the key function is the least-witness symbol built
    from it.
    """

    fn: SkolemFunction
    bound: Term
    params: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if len(self.params) != self.fn.arity:
            raise ValueError("parameter count does not match the Skolem function")

    @property
    def key_fn(self):
        return least_witness_fn(self.fn)

    @property
    def hypothesis(self):
        return And(self.fn.instance(ZERO, self.params), negate(self.fn.instance(self.bound, self.params)))

    def reduce(self, S):
        return replace(self, bound=eval_term(S, self.bound), params=tuple(eval_term(S, t) for t in self.params))

    def witness_bound(self):
        return self.bound.value


@dataclass(frozen=True)
class Predecessor(CriticalFormula):
    """!s = 0 -> s = S c(s)."""

    subject: Term

    @property
    def key_fn(self):
        return PRED_FN

    @property
    def params(self):
        return (self.subject,)

    @property
    def hypothesis(self):
        return negate(eq(self.subject, ZERO))

    def reduce(self, S):
        return Predecessor(eval_term(S, self.subject))

    def witness_bound(self):
        v = self.subject.value
        return None if v is None else max(v - 1, 0)


@dataclass(frozen=True)
class KeyTermInfo:
    key_fn: SkolemFunction
    params: tuple[Term, ...]


def key_info(cr: CriticalFormula) -> KeyTermInfo:
    return KeyTermInfo(cr.key_fn, tuple(cr.params))


def reduce(cr: CriticalFormula, S: Mapping) -> CriticalFormula:
    return cr.reduce(S)


def key_term_at(cr: CriticalFormula, S: Mapping) -> App:
    return App(cr.key_fn, tuple(eval_term(S, t) for t in cr.params))


def key_default(S, cr: CriticalFormula):
    """S with the key term of ``cr`` read as ``?`` when it is canonical and unassigned.

    This matters only when the key term also occurs in the hypothesis.
    """
    key = key_term_at(cr, S)
    if key in S or not is_canonical(key):
        return S
    return S.extend(key, Q)


def is_solving(S: Mapping, crs: Sequence[CriticalFormula]) -> bool:
    return all(models_bar(S, cr.formula()) for cr in crs)


@dataclass(frozen=True)
class WitnessScan:
    """Outcome of scanning psi[0], psi[1], ... under a substitution.

    Exactly one of ``witness`` and ``blocker`` is set unless the scan ran
    past ``bound`` with every instance decided false.
    """

    witness: int | None = None
    blocker: App | None = None


def scan_witness(S: Mapping, fn: SkolemFunction, params: Sequence[Term], bound: int, total: bool = False) -> WitnessScan:
    """Least v <= bound with S |= fn[[v, params]], or the term blocking it."""
    params = tuple(eval_term(S, t, total) for t in params)
    if any(p.value is None for p in params):
        return WitnessScan(blocker=unev(App(fn, params), S)[0])
    for v in range(bound + 1):
        inst = fn.instance(numeral(v), params)
        if models(S, inst, total):
            return WitnessScan(witness=v)
        if not models(S, negate(inst), total):
            return WitnessScan(blocker=unev(inst, S)[0])
    return WitnessScan()


def falsified_scan(S: Mapping, cr: CriticalFormula, total: bool = False) -> WitnessScan:
    """Witness scan for a critical formula whose hypothesis holds under S."""
    red = cr.reduce(S)
    bound = red.witness_bound()
    if bound is None:
        raise WitnessError(f"hypothesis of {cr} has no ground bound under S")
    return scan_witness(S, cr.key_fn, red.params, bound, total)


def find_minimal_witness(S: Mapping, cr: CriticalFormula) -> int | None:
    """Least v within the formula's bound whose minimality formula holds in S-bar.

    Requires that S-bar falsifies ``cr``.
    """
    if not models_bar(S, negate(cr.formula())):
        raise WitnessError("critical formula is not falsified by the standard extension")
    return falsified_scan(S, cr, total=True).witness


def install(S, cr: CriticalFormula, v):
    """S extended by the key term of ``cr`` mapped to ``v``."""
    return S.extend(key_term_at(cr, S), v)
