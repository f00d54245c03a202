"""Top-level solve: path selection through T_1', lifting, and verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .critical import CriticalFormula, falsified_scan, key_default, key_term_at
from .injury import InjuryTrace, check_finite_injury, path_str
from .lang import ZERO
from .subst import Q, EpsSubstitution, eval_term, incorrect_entries, is_correct, models, models_bar
from .trees import CForm, ETerm, FuelExhausted, InvariantError, Tower

__all__ = [
    "FuelExhausted",
    "InvariantError",
    "SolveResult",
    "VerificationError",
    "Report",
    "select_path",
    "solve",
    "verify",
    "extract_witness",
]


class VerificationError(RuntimeError):
    """The constructed substitution failed independent verification."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


@dataclass
class SolveResult:
    substitution: EpsSubstitution
    path_t1: tuple
    lifted_nodes: list[tuple]
    step_trace: InjuryTrace
    traces: list[InjuryTrace]
    lift_traces: list[InjuryTrace]
    stats: dict[int, int]
    tower: Tower = field(repr=False)
    steps: list[tuple] = field(default_factory=list)

    @property
    def N(self):
        return self.tower.N


def _holds_key(lab, key, S) -> bool:
    if isinstance(lab, ETerm):
        return lab.term == key
    if isinstance(lab, CForm):
        return key_term_at(lab.form, S) == key
    return False


def select_path(tower: Tower) -> list[tuple]:
    """The sequence alpha_0, alpha_1, ... through T_1', ending at a leaf."""
    alpha: tuple = ()
    steps = [alpha]
    while not tower.is_leaf(1, alpha):
        tower._burn(0)
        lab = tower.label(1, alpha)
        S = tower.subst(1, alpha)
        if isinstance(lab, ETerm):
            alpha = alpha + (S.get(lab.term, Q),)
        elif isinstance(lab, CForm):
            f = lab.form
            key = key_term_at(f, S)
            S0 = key_default(S, f)
            if models(S0, f.formula(ZERO)):
                alpha = alpha + (S.get(key, Q),)
            else:
                w = falsified_scan(S0, f).witness
                if w is None:
                    raise InvariantError(f"no decided minimal witness at T_1{path_str(alpha)}")
                base = alpha
                for k in range(len(alpha)):
                    if _holds_key(tower.label(1, alpha[:k]), key, S):
                        base = alpha[:k]
                        break
                alpha = base + (w,)
        else:
            raise InvariantError(f"T_1{path_str(alpha)} has no label but is not a leaf")
        steps.append(alpha)
        if tower.debug and incorrect_entries(tower.subst(1, alpha)):
            tower.incorrect.append((1, alpha))
    return steps


def _chain_trace(tower: Tower, level: int, node: tuple) -> tuple[InjuryTrace, list[InjuryTrace]]:
    """Lift every prefix of ``node``; also return the inner step sequences."""
    trace = InjuryTrace(name=f"lift{level}")
    inner = []
    for k in range(len(node) + 1):
        lf = tower.lift(level, node[:k])
        trace.add(node[:k], lf.node)
        seq = InjuryTrace(name=f"lift{level}:{path_str(node[:k])}")
        for n, s in enumerate(lf.steps):
            seq.add((0,) * n, s)
        inner.append(seq)
    return trace, inner


def solve(crs: Sequence[CriticalFormula], fuel: int = 10**6, debug: bool = False, check: bool = True) -> SolveResult:
    tower = Tower(crs, fuel=fuel, debug=debug)
    steps = select_path(tower)
    alpha = steps[-1]

    step_trace = InjuryTrace(name="select")
    for n, a in enumerate(steps):
        step_trace.add((0,) * n, a)

    lifted = [alpha]
    for level in range(1, tower.N):
        lifted.append(tower.lift(level, lifted[-1]).node)
    gamma = lifted[-1]
    S = tower.subst(tower.N, gamma)

    traces, lift_traces = [], []
    for level in range(1, tower.N + 1):
        tr, inner = _chain_trace(tower, level, lifted[level - 1])
        traces.append(tr)
        lift_traces.extend(inner)

    result = SolveResult(
        substitution=S,
        path_t1=alpha,
        lifted_nodes=lifted,
        step_trace=step_trace,
        traces=traces,
        lift_traces=lift_traces,
        stats=dict(tower.used),
        tower=tower,
        steps=steps,
    )
    if check:
        rep = verify(S, crs)
        if not rep.ok:
            raise VerificationError(f"constructed substitution fails verification: {rep}", result)
        if check_finite_injury(step_trace) is not None:
            raise VerificationError("path selection is not finite injury", result)
    return result


@dataclass
class Report:
    verdicts: list[bool]
    correct: bool
    incorrect: list = field(default_factory=list)

    @property
    def solving(self) -> bool:
        return all(self.verdicts)

    @property
    def ok(self) -> bool:
        return self.solving and self.correct


def verify(S: Mapping, crs: Sequence[CriticalFormula]) -> Report:
    """Per-formula satisfaction in the standard extension, and correctness."""
    return Report(
        verdicts=[models_bar(S, cr.formula()) for cr in crs],
        correct=is_correct(S),
        incorrect=incorrect_entries(S),
    )


class WitnessExtractionError(ValueError):
    pass


def extract_witness(crs: Sequence[CriticalFormula], S: Mapping, index: int = 0) -> int:
    """The value S gives the key term of ``crs[index]``, checked against its matrix.

    An entry ``?`` stands for 0, the value the standard extension evaluates it to.
    """
    cr = crs[index]
    key = key_term_at(cr, S)
    v = eval_term(S, key, total=True).value
    if v is None:
        raise WitnessExtractionError(f"key term {key} has no value")
    params = [eval_term(S, p, total=True) for p in cr.params]
    if not models_bar(S, cr.key_fn.instance(eval_term(S, key, total=True), params)):
        raise WitnessExtractionError(f"{key} := {v} does not satisfy the matrix")
    return v
