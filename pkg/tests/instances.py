"""Hand-built instances shared by several test modules."""
from epsengine.critical import PRED_FN, Existence, Induction, Predecessor
from epsengine.lang import ZERO, And, NegAtom, SkolemFunction, Succ, Var, eq, lt
from epsengine.lang import numeral as N

x, y = Var("x"), Var("y1")

C2 = SkolemFunction.from_matrix(eq(x, N(2)))  # c_{exists x. x = 2}
LT1 = SkolemFunction.from_matrix(lt(x, N(1)))
LT3 = SkolemFunction.from_matrix(lt(x, N(3)))
IDENT = SkolemFunction.from_matrix(eq(x, y), params=("y1",))
SUCC = SkolemFunction.from_matrix(eq(x, Succ(y)), params=("y1",))

# rank 2: the matrix mentions the rank-1 predecessor symbol
D = SkolemFunction.from_matrix(And(NegAtom("=", (x, ZERO)), eq(PRED_FN(x), N(2))))
# rank 2: the matrix mentions the rank-1 successor symbol
H = SkolemFunction.from_matrix(eq(SUCC(x), N(3)))
H_LT = SkolemFunction.from_matrix(lt(SUCC(x), N(4)))

SINGLE = [Existence(C2, N(2))]

RANK1 = {
    "single": SINGLE,
    "less-than-one": [Existence(LT1, N(0))],
    "induction": [Induction(LT3, N(5))],
    "shared-key": [Existence(C2, N(5)), Existence(C2, N(2))],
    "shared-three": [Existence(C2, N(7)), Existence(C2, N(2)), Induction(C2, N(4))],
    "pred-of-skolem": [Predecessor(C2()), Existence(C2, N(2))],
    "two-independent": [Existence(C2, N(2)), Existence(SUCC, N(4), (N(3),))],
    "skolem-param": [Existence(IDENT, N(2), (C2(),)), Existence(C2, N(2))],
}

RANK2 = {
    "pred-nested": [Predecessor(N(3)), Existence(D, N(3))],
    "pred-nested-swapped": [Existence(D, N(3)), Predecessor(N(3))],
    "pred-nested-ident": [Predecessor(N(3)), Existence(D, N(3)), Existence(IDENT, D(), (D(),))],
    "succ-nested": [Existence(H, N(2)), Existence(SUCC, N(3), (N(2),))],
    "succ-nested-swapped": [Existence(SUCC, N(3), (N(2),)), Existence(H, N(2))],
    "induction-nested": [Induction(H_LT, N(5)), Existence(SUCC, N(3), (N(2),)), Predecessor(N(2))],
    "shared-nested": [Existence(H, N(5)), Existence(H, N(2)), Existence(SUCC, N(3), (N(2),))],
    "shared-pred-nested": [Existence(D, N(7)), Existence(D, N(3)), Predecessor(N(3)), Predecessor(N(7))],
    "mixed": [Existence(H, N(2)), Existence(D, N(3)), Predecessor(N(3)), Existence(SUCC, N(3), (N(2),))],
}
