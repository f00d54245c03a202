"""The lazy tower of priority trees T_1 .. T_{N+1}.

Nodes are tuples of branch labels from ``N u {?}`` and are never stored as a
tree: labels, substitutions and lifts are computed on demand and memoized per
``(level, path)``.  Level ``N + 1`` is the top tree, whose node at depth d is
labeled with the d-th critical formula; every lower level is labeled by
looking for the first node of the level above that it does not settle.

Leaves of a lower level are the nodes of the truncated tree T_i' whose lift
reaches a leaf of T_{i+1}'.  The first unsettled node is searched inside
T_{i+1}' only, and leaves there count as settled.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .critical import CriticalFormula, falsified_scan, key_default, key_term_at
from .injury import path_str
from .lang import ZERO, App, is_canonical, negate, numeral, rank, subterms
from .subst import EMPTY, Q, EpsSubstitution, decides, incorrect_entries, models, unev

log = logging.getLogger(__name__)


class FuelExhausted(RuntimeError):
    pass


class InvariantError(RuntimeError):
    """A property the construction guarantees failed to hold."""


@dataclass(frozen=True)
class ETerm:
    term: App

    def __str__(self):
        return f"e = {self.term}"


@dataclass(frozen=True)
class CForm:
    form: CriticalFormula

    def __str__(self):
        return f"form = {self.form.formula()}"


@dataclass(frozen=True)
class Leaf:
    def __str__(self):
        return "leaf"


LEAF = Leaf()


def enc(u) -> int:
    return 0 if u is Q else u + 1


def omega_index(path: Sequence) -> int:
    """Position of a node in the fixed omega-ordering of a tree.

    code(<>) = 0 and code(a^<u>) = pair(code(a), enc(u)) + 1 with the
    bijective pairing pair(a, b) = 2^b (2a + 1) - 1.
    """
    code = 0
    for u in path:
        code = (2 * code + 1) << enc(u)
    return code


@dataclass
class Lift:
    """Result of lifting a node one level up."""

    node: tuple
    steps: list[tuple] = field(default_factory=list)
    leaf: bool = False


class Tower:
    def __init__(self, crs: Sequence[CriticalFormula], fuel: int = 10**6, debug: bool = False):
        self.crs = tuple(crs)
        self.K = len(self.crs)
        self.N = max([cr.rank for cr in self.crs], default=1)
        self.top = self.N + 1
        self.fuel = fuel
        self.debug = debug
        self.used: Counter = Counter()
        self.events: list[str] = []
        self.incorrect: list[tuple[int, tuple]] = []
        self._label: dict = {}
        self._subst: dict = {}
        self._lift: dict = {}

    # -- bookkeeping --------------------------------------------------------

    def _burn(self, level: int):
        self.used[level] += 1
        if self.used[level] > self.fuel:
            raise FuelExhausted(f"level {level} exceeded {self.fuel} steps")

    # -- node data ----------------------------------------------------------

    def is_leaf(self, i: int, path: tuple) -> bool:
        """Leaf of the truncated tree T_i' (the path is assumed to lie in it)."""
        if i == self.top:
            return len(path) >= self.K
        return self.lift(i, path).leaf

    def label(self, i: int, path: tuple):
        path = tuple(path)
        if i == self.top:
            return CForm(self.crs[len(path)]) if len(path) < self.K else LEAF
        key = (i, path)
        if key not in self._label:
            self._label[key] = self._compute_label(i, path)
        return self._label[key]

    def subst(self, i: int, path: tuple) -> EpsSubstitution:
        """S(path) for a node of a lower tree."""
        if i >= self.top:
            raise ValueError("the top tree carries no substitution")
        path = tuple(path)
        if not path:
            return EMPTY
        key = (i, path)
        S = self._subst.get(key)
        if S is None:
            parent = self.subst(i, path[:-1])
            lab = self.label(i, path[:-1])
            if isinstance(lab, ETerm):
                S = parent.extend(lab.term, path[-1])
            elif isinstance(lab, CForm):
                S = parent.extend(key_term_at(lab.form, parent), path[-1])
            else:
                raise InvariantError(f"{path_str(path)} extends a leaf of T_{i}")
            self._subst[key] = S
        return S

    # -- settling -----------------------------------------------------------

    def settles(self, i: int, S: EpsSubstitution, lab) -> bool:
        """Whether a node of T_i with substitution S settles a node labeled ``lab``."""
        if isinstance(lab, Leaf):
            return True
        if isinstance(lab, ETerm):
            return rank(lab.term) > i or lab.term in S
        f = lab.form
        if f.rank <= i:
            key = key_term_at(f, S)
            return is_canonical(key) and key in S and models(S, f.formula())
        imp0 = f.formula(ZERO)
        S0 = key_default(S, f)
        if models(S0, imp0):
            return True
        if models(S0, negate(imp0)):
            return falsified_scan(S0, f).witness is not None
        return False

    def _compute_label(self, i: int, path: tuple):
        lf = self.lift(i, path)
        if lf.leaf:
            return LEAF
        S = self.subst(i, path)
        _, lab = self.least_unsettled(i, path, lf.node)
        if isinstance(lab, ETerm):
            if rank(lab.term) > i:
                raise InvariantError("unsettled term of rank above the level")
            return lab
        f = lab.form
        if f.rank <= i:
            red = f.reduce(S)
            key = red.key_term
            others = [t for t in unev(red.formula(), S) if t != key]
            return ETerm(others[0]) if others else CForm(red)
        imp0 = f.formula(ZERO)
        S0 = key_default(S, f)
        if not decides(S0, imp0):
            return ETerm(unev(imp0, S0)[0])
        scan = falsified_scan(S0, f)
        if scan.blocker is None:
            raise InvariantError(f"form of rank {f.rank} is unsettled at T_{i}{path_str(path)} but decided")
        return ETerm(scan.blocker)

    def least_unsettled(self, i: int, alpha: tuple, bound: tuple):
        """The omega-least node of T_{i+1}' that ``alpha`` does not settle.

        ``bound`` is a known unsettled node, so only nodes with a smaller
        omega-index need to be examined.
        """
        S = self.subst(i, alpha)
        up = i + 1
        if up == self.top:
            # top labels depend on depth only and <?,...,?> is the omega-least node of each depth
            for d in range(self.K):
                lab = self.label(up, (Q,) * d)
                if not self.settles(i, S, lab):
                    return (Q,) * d, lab
            raise InvariantError(f"T_{i}{path_str(alpha)} settles every node of T_{up}")

        best = [tuple(bound), omega_index(bound)]

        def visit(node: tuple, code: int):
            self._burn(i)
            if code >= best[1] or self.is_leaf(up, node):
                return
            if not self.settles(i, S, self.label(up, node)):
                best[0], best[1] = node, code
                return
            u = Q
            while True:
                child_code = (2 * code + 1) << enc(u)
                if child_code >= best[1]:
                    break
                visit(node + (u,), child_code)
                u = 0 if u is Q else u + 1

        visit((), 0)
        return best[0], self.label(up, best[0])

    # -- lifting ------------------------------------------------------------

    def lift(self, i: int, alpha: tuple) -> Lift:
        """delta_i(alpha): walk T_{i+1} from the root while alpha settles the node."""
        alpha = tuple(alpha)
        key = (i, alpha)
        if key in self._lift:
            return self._lift[key]
        S = self.subst(i, alpha)
        up = i + 1
        cur: tuple = ()
        steps = [cur]
        while True:
            self._burn(i)
            if self.is_leaf(up, cur):
                out = Lift(cur, steps, leaf=True)
                break
            lab = self.label(up, cur)
            if not self.settles(i, S, lab):
                out = Lift(cur, steps, leaf=False)
                break
            cur = self.lift_step(i, S, cur, lab)
            steps.append(cur)
            if self.debug and up <= self.N:
                bad = incorrect_entries(self.subst(up, cur))
                if bad:
                    self.incorrect.append((up, cur))
        self._lift[key] = out
        return out

    def lift_step(self, i: int, S: EpsSubstitution, cur: tuple, lab) -> tuple:
        """The next node after ``cur`` (settled, not a leaf) in the lift sequence."""
        up = i + 1
        if isinstance(lab, ETerm):
            e = lab.term
            if rank(e) <= i:
                return cur + (S[e],)
            return cur + (self.least_witness_value(S, e),)
        f = lab.form
        if f.rank <= i:
            return cur + (S[key_term_at(f, S)],)
        S0 = key_default(S, f)
        if models(S0, f.formula(ZERO)):
            return cur + (Q,)
        u = falsified_scan(S0, f).witness
        key = key_term_at(f, S)
        # only a node labeled by the key term itself is revisited; forms with the
        # same key stay on the path, since dropping the entries below them can
        # remove values the new witness depends on
        base = cur
        for k in range(len(cur)):
            if self.label(up, cur[:k]) == ETerm(key):
                base = cur[:k]
                break
        if base is not cur and cur[len(base)] is not Q:
            self.events.append(f"T_{up}: backtrack at {path_str(cur)} over numeral branch")
        return base + (u,)

    def least_witness_value(self, S: EpsSubstitution, e: App):
        """Least u with S |= phi[[u, t]] for e = c_{exists x. phi}(t), else ``?``.

        Beyond every numeral mentioned by S, e and the matrix (plus the
        successor depth), instances of the matrix are uniformly false or
        undecided, so the scan can stop there.
        """
        fn = e.fn
        limit = _numeral_ceiling(S, e) + 2
        for u in range(limit + 1):
            inst = fn.instance(numeral(u), e.args)
            if models(S, inst):
                return u
            if not models(S, negate(inst)):
                return Q
        return Q

    def rank1_lambda(self, alpha: tuple) -> tuple:
        """The rank-1 path map: follow stored numeric key values from the root."""
        if self.N != 1:
            raise ValueError("rank1_lambda needs an instance of rank 1")
        S = self.subst(1, alpha)
        cur: tuple = ()
        while len(cur) < self.K:
            key = key_term_at(self.crs[len(cur)], S)
            v = S.get(key) if is_canonical(key) else None
            if v is None or v is Q:
                break
            cur = cur + (v,)
        return cur


def _numeral_ceiling(S: EpsSubstitution, e: App) -> int:
    m = 0
    for k, v in S.items():
        if v is not Q:
            m = max(m, v)
        for a in k.args:
            m = max(m, a.value)
    for a in e.args:
        m = max(m, a.value)
    depth = 0
    for t in subterms(e.fn.matrix):
        if t.value is not None:
            m = max(m, t.value)
        depth = max(depth, _succ_depth(t))
    return m + depth


def _succ_depth(t) -> int:
    d = 0
    while hasattr(t, "arg"):
        d += 1
        t = t.arg
    return d
