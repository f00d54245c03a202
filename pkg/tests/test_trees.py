import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epsengine.critical import Existence
from epsengine.subst import EMPTY, Q, EpsSubstitution, is_correct
from epsengine.trees import LEAF, CForm, ETerm, FuelExhausted, Tower, omega_index

from instances import C2, D, H, IDENT, N, RANK1, SINGLE, SUCC

branch = st.one_of(st.just(Q), st.integers(0, 5))
nodes = st.lists(branch, max_size=6).map(tuple)


class TestOmegaIndex:
    def test_root_first(self):
        assert omega_index(()) == 0

    @given(nodes, branch)
    def test_prefix_first(self, a, u):
        assert omega_index(a) < omega_index(a + (u,))

    def test_injective(self):
        labels = [Q, 0, 1, 2, 3]
        seen = {}
        for depth in range(4):
            for p in itertools.product(labels, repeat=depth):
                code = omega_index(p)
                assert code not in seen, (p, seen.get(code))
                seen[code] = p

    def test_default_branch_first_among_siblings(self):
        assert omega_index((Q,)) < omega_index((0,)) < omega_index((1,))


class TestSubst:
    crs = [Existence(IDENT, N(1), (C2(),))]

    def test_root(self):
        assert Tower(self.crs).subst(1, ()) == EMPTY

    def test_one_step(self):
        t = Tower(self.crs)
        assert t.label(1, ()) == ETerm(C2())
        assert t.subst(1, (Q,)) == EpsSubstitution({C2(): Q})

    def test_two_steps(self):
        t = Tower(self.crs)
        assert t.subst(1, (Q, 5)) == EpsSubstitution({C2(): Q, IDENT(N(0)): 5})

    def test_top_tree_has_none(self):
        with pytest.raises(ValueError):
            Tower(SINGLE).subst(2, ())


class TestSettles:
    def test_higher_rank_term(self):
        assert Tower(SINGLE).settles(1, EMPTY, ETerm(D()))

    def test_unassigned_term(self):
        assert not Tower(SINGLE).settles(1, EMPTY, ETerm(C2()))

    def test_assigned_term(self):
        assert Tower(SINGLE).settles(1, EpsSubstitution({C2(): Q}), ETerm(C2()))

    def test_higher_rank_form_with_false_hypothesis(self):
        form = CForm(Existence(H, N(5)))
        t = Tower([form.form])
        assert not t.settles(1, EMPTY, form)
        assert t.settles(1, EpsSubstitution({SUCC(N(5)): 6}), form)

    def test_higher_rank_form_with_witness(self):
        form = CForm(Existence(H, N(5)))
        s = EpsSubstitution({SUCC(N(5)): 3, SUCC(N(0)): 1, SUCC(N(1)): 2, SUCC(N(2)): 3})
        assert Tower([form.form]).settles(1, s, form)
        # the scan stops at an undecided instance
        assert not Tower([form.form]).settles(1, EpsSubstitution({SUCC(N(5)): 3}), form)

    def test_low_rank_form_needs_truth(self):
        form = CForm(Existence(C2, N(2)))
        t = Tower(SINGLE)
        assert t.settles(1, EpsSubstitution({C2(): 2}), form)
        assert not t.settles(1, EpsSubstitution({C2(): Q}), form)
        assert not t.settles(1, EMPTY, form)

    def test_leaf(self):
        assert Tower(SINGLE).settles(1, EMPTY, LEAF)


class TestLabels:
    def test_form_adopted(self):
        assert Tower(SINGLE).label(1, ()) == CForm(Existence(C2, N(2)))

    def test_extra_term_picked(self):
        t = Tower([Existence(IDENT, C2(), (N(1),))])
        assert t.label(1, ()) == ETerm(C2())

    def test_copied_from_above(self):
        t = Tower([Existence(H, N(5))])
        assert t.label(2, ()) == ETerm(SUCC(N(5)))
        assert t.label(1, ()) == ETerm(SUCC(N(5)))

    def test_higher_rank_form_blocked_by_conclusion(self):
        t = Tower([Existence(H, N(5))])
        # hypothesis true, psi[0] needs the successor of 0
        assert t.label(1, (3,)) == ETerm(SUCC(N(0)))
        assert t.label(1, (3, 1)) == ETerm(SUCC(N(1)))

    def test_top_tree(self):
        t = Tower(RANK1["shared-key"])
        assert t.label(2, ()) == CForm(RANK1["shared-key"][0])
        assert t.label(2, (Q,)) == CForm(RANK1["shared-key"][1])
        assert t.label(2, (Q, Q)) == LEAF


class TestLift:
    def test_root(self):
        lf = Tower(SINGLE).lift(1, ())
        assert lf.node == () and not lf.leaf

    def test_leaf_reached(self):
        t = Tower(SINGLE)
        lf = t.lift(1, (2,))
        assert lf.node == (2,) and lf.leaf
        assert t.is_leaf(1, (2,))
        assert not t.is_leaf(1, ())

    def test_direct_lookup_step(self):
        t = Tower([Existence(IDENT, C2(), (N(1),))])
        assert t.lift_step(1, EpsSubstitution({C2(): 4}), (), ETerm(C2())) == (4,)

    def test_satisfied_higher_form(self):
        t = Tower([Existence(H, N(5))])
        s = EpsSubstitution({SUCC(N(5)): 6})
        assert t.lift_step(1, s, (6,), CForm(Existence(H, N(5)))) == (6, Q)

    def test_witness_step(self):
        t = Tower([Existence(H, N(2))])
        alpha = (3, 1, 2)
        assert t.subst(1, alpha) == EpsSubstitution({SUCC(N(2)): 3, SUCC(N(0)): 1, SUCC(N(1)): 2})
        assert is_correct(t.subst(1, alpha))
        lf = t.lift(1, alpha)
        assert lf.steps == [(), (3,), (3, 2)]
        assert lf.leaf
        assert all(is_correct(t.subst(2, p)) for p in lf.steps)

    def test_backtrack_to_key_term(self):
        t = Tower([Existence(H, N(5))])
        # a T_2 node whose root label is the key term itself, then a falsified form with that key
        t._label[(2, ())] = ETerm(H())
        t._label[(2, (Q,))] = CForm(Existence(H, N(5)))
        s = EpsSubstitution({SUCC(N(5)): 3, SUCC(N(0)): 1, SUCC(N(1)): 2, SUCC(N(2)): 3})
        assert t.lift_step(1, s, (Q,), CForm(Existence(H, N(5)))) == (2,)

    def test_monotone_without_backtracks(self):
        t = Tower(RANK1["two-independent"])
        a, b = t.lift(1, (2,)), t.lift(1, (2, 4))
        assert b.node[: len(a.node)] == a.node


class TestRank1Lambda:
    def test_empty(self):
        assert Tower(RANK1["two-independent"]).rank1_lambda(()) == ()

    def test_one_key(self):
        assert Tower(RANK1["two-independent"]).rank1_lambda((2,)) == (2,)

    def test_requires_rank_one(self):
        with pytest.raises(ValueError):
            Tower([Existence(H, N(5))]).rank1_lambda(())


def test_fuel_is_enforced():
    with pytest.raises(FuelExhausted):
        t = Tower([Existence(H, N(5))], fuel=2)
        t.lift(1, (3, 1, 2, 3))


def test_empty_instance():
    t = Tower([])
    assert t.is_leaf(1, ())
