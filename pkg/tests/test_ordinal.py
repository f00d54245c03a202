import pytest
from hypothesis import given
from hypothesis import strategies as st

from epsengine.ordinal import ONE, ZERO, W, Ordinal, compare, omega_pow


def cnf(*terms):
    return Ordinal(terms)


def _sum(terms):
    total = ZERO
    for e, c in terms:
        total = total + Ordinal(((e, c),))
    return total


ordinals = st.recursive(
    st.integers(0, 3).map(Ordinal.of),
    lambda kids: st.lists(st.tuples(kids, st.integers(1, 3)), max_size=3).map(_sum),
    max_leaves=5,
)


def test_absorption():
    assert W + 1 == cnf((ONE, 1), (ZERO, 1))
    assert 1 + W == W
    assert Ordinal.of(1) + W == W


def test_compare():
    w2 = omega_pow(2)
    assert compare(w2 + W, w2) == 1
    assert w2 + W > w2
    assert compare(W, W) == 0


def test_omega_pow():
    assert omega_pow(2) == cnf((Ordinal.of(2), 1))
    assert str(omega_pow(2)) == "w^2"


def test_printing():
    assert str(ZERO) == "0"
    assert str(Ordinal.of(3)) == "3"
    assert str(omega_pow(2) + omega_pow(2) + 1) == "w^2*2 + 1"
    assert str(omega_pow(W)) == "w^(w)"
    assert str(W + W + 2) == "w*2 + 2"


def test_invariants_enforced():
    with pytest.raises(ValueError):
        cnf((ONE, 1), (Ordinal.of(2), 1))
    with pytest.raises(ValueError):
        cnf((ONE, 0))


def test_finite_round_trip():
    for n in range(10):
        assert int(Ordinal.of(n)) == n
        assert Ordinal.of(n).is_finite()
    assert not W.is_finite()


@given(ordinals, ordinals, ordinals)
def test_add_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(ordinals, ordinals)
def test_trichotomy(a, b):
    assert [a < b, a == b, b < a].count(True) == 1


@given(ordinals, ordinals)
def test_omega_pow_strictly_monotone(a, b):
    if a < b:
        assert omega_pow(a) < omega_pow(b)


@given(ordinals, ordinals)
def test_add_right_monotone(a, b):
    if b > ZERO:
        assert a + b > a
