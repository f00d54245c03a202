import pytest

from epsengine.critical import Existence, Induction
from epsengine.driver import (
    FuelExhausted,
    VerificationError,
    WitnessExtractionError,
    extract_witness,
    select_path,
    solve,
    verify,
)
from epsengine.injury import check_finite_injury, check_weakly_finite_injury
from epsengine.subst import EMPTY, Q, EpsSubstitution
from epsengine.trees import Tower

from instances import C2, H, LT1, LT3, N, RANK1, RANK2, SINGLE, SUCC


def brute_minimal(fn, params, limit=50):
    from epsengine.subst import models_bar

    return next((v for v in range(limit) if models_bar(EMPTY, fn.instance(N(v), params))), None)


class TestSelectPath:
    def test_empty_instance(self):
        t = Tower([])
        assert select_path(t) == [()]

    def test_single_existence(self):
        res = solve(SINGLE)
        assert res.substitution == EpsSubstitution({C2(): 2})
        assert brute_minimal(C2, ()) == 2
        assert check_finite_injury(res.step_trace) is None

    def test_shared_key_is_corrected_once(self):
        res = solve(RANK1["shared-key"])
        assert res.steps == [(), (Q,), (2,)]
        assert check_finite_injury(res.step_trace) is None

    def test_two_independent_keys(self):
        res = solve(RANK1["two-independent"])
        assert check_finite_injury(res.step_trace) is None
        assert res.substitution == EpsSubstitution({C2(): 2, SUCC(N(3)): 4})


class TestSolve:
    def test_empty(self):
        res = solve([])
        assert res.substitution == EMPTY
        assert verify(res.substitution, []).ok

    def test_shared_key_three_formulas(self):
        crs = RANK1["shared-three"]
        res = solve(crs)
        assert res.substitution[C2()] == 2
        assert sum(1 for k in res.substitution if k.fn == C2) == 1
        assert verify(res.substitution, crs).solving

    @pytest.mark.parametrize("name", sorted(RANK1))
    def test_rank_one_instances(self, name):
        res = solve(RANK1[name], debug=True)
        assert res.N == 1
        assert verify(res.substitution, RANK1[name]).ok
        assert res.tower.incorrect == []

    @pytest.mark.parametrize("name", sorted(RANK2))
    def test_rank_two_instances(self, name):
        res = solve(RANK2[name], debug=True)
        assert res.N == 2
        assert verify(res.substitution, RANK2[name]).ok
        assert res.tower.incorrect == []
        for tr in res.traces:
            assert check_weakly_finite_injury(tr, len(tr)) is None

    def test_fuel(self):
        with pytest.raises(FuelExhausted):
            solve(RANK2["succ-nested"], fuel=3)

    def test_result_fields(self):
        res = solve(RANK2["succ-nested"])
        assert len(res.lifted_nodes) == res.N
        assert res.lifted_nodes[0] == res.path_t1
        assert [tr.name for tr in res.traces] == ["lift1", "lift2"]
        assert res.stats[0] > 0 and res.stats[1] > 0


class TestVerify:
    def test_default_fails_existence(self):
        rep = verify(EMPTY, SINGLE)
        assert rep.verdicts == [False]
        assert rep.correct and not rep.ok

    def test_non_minimal_witness(self):
        crs = [Existence(LT3, N(1))]
        rep = verify(EpsSubstitution({LT3(): 1}), crs)
        assert rep.solving and not rep.correct
        assert rep.incorrect == [LT3()]

    def test_solution_passes(self):
        assert verify(solve(SINGLE).substitution, SINGLE).ok


class TestExtractWitness:
    def test_exists_two(self):
        assert extract_witness(SINGLE, solve(SINGLE).substitution) == 2

    def test_exists_below_one(self):
        crs = [Existence(LT1, N(0))]
        assert extract_witness(crs, solve(crs).substitution) == 0

    def test_least_witness(self):
        crs = [Induction(LT3, N(5))]
        assert extract_witness(crs, solve(crs).substitution) == 2

    def test_wrong_value_rejected(self):
        with pytest.raises(WitnessExtractionError):
            extract_witness(SINGLE, EpsSubstitution({C2(): 1}))

    def test_default_rejected_when_false(self):
        with pytest.raises(WitnessExtractionError):
            extract_witness(SINGLE, EMPTY)


def test_verification_error_carries_result():
    err = VerificationError("boom", result=42)
    assert err.result == 42 and "boom" in str(err)


def test_rank_two_values():
    res = solve(RANK2["succ-nested"])
    assert res.substitution == EpsSubstitution({H(): 2, SUCC(N(2)): 3})
