"""Hypothesis strategies for closed terms, formulas and substitutions."""
from hypothesis import strategies as st

from epsengine.critical import PRED_FN
from epsengine.lang import And, Atom, Or, Succ, App, negate, numeral
from epsengine.subst import Q, EpsSubstitution

from instances import C2, D, H, IDENT, LT1, LT3, SUCC

FUNCTIONS = [C2, LT1, LT3, IDENT, SUCC, PRED_FN, D, H]
SMALL = 6

numerals = st.integers(0, SMALL).map(numeral)


def _grow(children):
    def app(fn):
        return st.tuples(*[children] * fn.arity).map(lambda args, fn=fn: App(fn, args))

    return st.one_of(children.map(Succ), st.sampled_from(FUNCTIONS).flatmap(app))


terms = st.recursive(numerals, _grow, max_leaves=4)

canonical_terms = st.sampled_from(FUNCTIONS).flatmap(
    lambda fn: st.tuples(*[numerals] * fn.arity).map(lambda args: App(fn, args))
)

atoms_ = st.builds(lambda p, a, b: Atom(p, (a, b)), st.sampled_from(["=", "<", "<="]), terms, terms)
literals = st.one_of(atoms_, atoms_.map(negate))

formulas = st.recursive(
    literals,
    lambda kids: st.one_of(st.builds(And, kids, kids), st.builds(Or, kids, kids)),
    max_leaves=6,
)

values = st.one_of(st.just(Q), st.integers(0, SMALL))

substitutions = st.dictionaries(canonical_terms, values, max_size=8).map(EpsSubstitution)
