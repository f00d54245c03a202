"""Random rank-1 instances built from a few matrix templates."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .critical import Existence, Induction, Predecessor
from .dsl import Instance
from .lang import And, App, SkolemFunction, Succ, Var, eq, le, lt, negate, numeral
from .lang import Or as Disj
from .subst import EMPTY, models

X, Y1, Y2 = Var("x"), Var("y1"), Var("y2")


@dataclass(frozen=True)
class GenParams:
    max_formulas: int = 10
    max_witness: int = 20
    max_functions: int = 4


def _matrix(rng: random.Random, arity: int, top: int):
    a, b = sorted(rng.sample(range(top + 1), 2))
    if arity == 0:
        return rng.choice([
            eq(X, numeral(a)),
            lt(numeral(a), X),
            And(lt(numeral(a), X), lt(X, numeral(b))),
            Disj(eq(X, numeral(b)), eq(X, numeral(a))),
            And(negate(eq(X, numeral(a))), le(X, numeral(b))),
            eq(Succ(X), numeral(b)),
        ])
    if arity == 1:
        return rng.choice([
            lt(Y1, X),
            eq(X, Succ(Y1)),
            Disj(eq(X, Y1), lt(numeral(a), X)),
            And(le(Y1, X), negate(eq(X, numeral(a)))),
            eq(Succ(X), Y1),
        ])
    return rng.choice([
        And(lt(Y1, X), lt(Y2, X)),
        Disj(eq(X, Y1), eq(X, Y2)),
        And(le(Y1, X), le(X, Y2)),
    ])


def generate(seed: int, params: GenParams = GenParams()) -> Instance:
    """A reproducible instance mixing all three critical-formula variants.

    Parameters of key terms are numerals or closed arity-0 Skolem terms, and
    key terms are deliberately reused so several formulas compete for them.
    """
    rng = random.Random(seed)
    top = params.max_witness
    inst = Instance()
    fns: list[SkolemFunction] = []
    for _ in range(rng.randint(1, params.max_functions)):
        arity = rng.choice([0, 0, 1, 1, 2])
        fn = SkolemFunction(_matrix(rng, arity, top), arity)
        if fn not in fns:
            fns.append(fn)
    for k, fn in enumerate(fns):
        inst.skolems[f"f{k}"] = fn
    closed = [App(fn, ()) for fn in fns if fn.arity == 0]

    def arg():
        if closed and rng.random() < 0.3:
            return rng.choice(closed)
        return numeral(rng.randint(0, top))

    keys: list[tuple] = []

    def key():
        if keys and rng.random() < 0.4:
            return rng.choice(keys)
        fn = rng.choice(fns)
        k = (fn, tuple(arg() for _ in range(fn.arity)))
        keys.append(k)
        return k

    def witness(fn, ps):
        # mostly pick a value that really satisfies the matrix, so the formula bites
        if all(p.value is not None for p in ps) and rng.random() < 0.7:
            good = [v for v in range(top + 1) if models(EMPTY, fn.instance(numeral(v), ps))]
            if good:
                return numeral(rng.choice(good))
        return arg()

    for _ in range(rng.randint(1, params.max_formulas)):
        r = rng.random()
        if r < 0.45:
            fn, ps = key()
            inst.crits.append(Existence(fn, witness(fn, ps), ps))
        elif r < 0.8:
            fn, ps = key()
            inst.crits.append(Induction(fn, arg(), ps))
        else:
            inst.crits.append(Predecessor(arg()))
    return inst
