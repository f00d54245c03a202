"""Finite-injury relationships between trees branching over N and ``?``.

A node is the tuple of branch labels leading to it from the root.  An
:class:`InjuryTrace` records a map lambda: T1 -> T2 on a finite set of
source nodes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .ordinal import Ordinal, omega_pow
from .subst import Q

PathNode = tuple


def is_prefix(a: Sequence, b: Sequence) -> bool:
    return len(a) <= len(b) and tuple(b[: len(a)]) == tuple(a)


def is_proper_prefix(a: Sequence, b: Sequence) -> bool:
    return len(a) < len(b) and tuple(b[: len(a)]) == tuple(a)


def path_str(p: Sequence) -> str:
    return "<" + ",".join("?" if u is Q else str(u) for u in p) + ">"


def parse_path(text: str) -> PathNode:
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise ValueError(f"bad path {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return tuple(Q if s.strip() == "?" else int(s) for s in body.split(","))


@dataclass
class InjuryTrace:
    steps: list[tuple[PathNode, PathNode]] = field(default_factory=list)
    name: str = ""

    def add(self, source: PathNode, image: PathNode):
        self.steps.append((tuple(source), tuple(image)))

    @property
    def sources(self):
        return [s for s, _ in self.steps]

    @property
    def images(self):
        return [i for _, i in self.steps]

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class Violation:
    """A witnessing pair of step indices (or a run) and why it fails."""

    first: int
    second: int
    reason: str


def corrects(a: PathNode, b: PathNode) -> bool:
    """Some alpha^<?> is a prefix of ``a`` while alpha^<u> is a prefix of ``b``."""
    for k in range(min(len(a), len(b))):
        if a[k] != b[k]:
            return a[k] is Q and b[k] is not Q
    return False


def check_finite_injury(trace: InjuryTrace) -> Violation | None:
    """None when every strictly extending source pair has a legal image move."""
    for i, j in combinations(range(len(trace.steps)), 2):
        (x, fx), (y, fy) = trace.steps[i], trace.steps[j]
        if not is_proper_prefix(x, y):
            continue
        if is_proper_prefix(fx, fy) or corrects(fx, fy):
            continue
        return Violation(i, j, f"{path_str(fx)} -> {path_str(fy)} neither extends nor corrects ? to a numeral")
    return None


def longest_constant_run(trace: InjuryTrace) -> int:
    """Longest chain of strictly extending sources sharing one image."""
    best = 0
    n = len(trace.steps)
    run = [1] * n
    for j in range(n):
        for i in range(j):
            if trace.steps[i][1] == trace.steps[j][1] and is_proper_prefix(trace.steps[i][0], trace.steps[j][0]):
                run[j] = max(run[j], run[i] + 1)
        best = max(best, run[j])
    return best


def check_weakly_finite_injury(trace: InjuryTrace, max_run: int) -> Violation | None:
    if max_run < 1:
        raise ValueError("max_run must be at least 1")
    for i, j in combinations(range(len(trace.steps)), 2):
        (x, fx), (y, fy) = trace.steps[i], trace.steps[j]
        if not is_prefix(x, y):
            continue
        if is_prefix(fx, fy) or corrects(fx, fy):
            continue
        return Violation(i, j, f"{path_str(fx)} -> {path_str(fy)} neither extends nor corrects ? to a numeral")
    run = longest_constant_run(trace)
    if run > max_run:
        return Violation(-1, -1, f"constant run of length {run} exceeds {max_run}")
    return None


def _branch_less(u, v) -> bool:
    return u is not Q and v is Q


def kb_leq(a: PathNode, b: PathNode) -> bool:
    """Kleene-Brouwer order with every numeral below ``?``.

    Numerals are pairwise incomparable, so the order is partial.
    """
    for k in range(min(len(a), len(b))):
        if a[k] != b[k]:
            return _branch_less(a[k], b[k])
    return len(a) >= len(b)


def kb_less(a: PathNode, b: PathNode) -> bool:
    return a != b and kb_leq(a, b)


def kb_preserving(trace: InjuryTrace) -> bool:
    """Source extension sends images strictly down in the Kleene-Brouwer order."""
    for i, j in combinations(range(len(trace.steps)), 2):
        (x, fx), (y, fy) = trace.steps[i], trace.steps[j]
        if is_proper_prefix(x, y) and not kb_less(fy, fx):
            return False
    return True


# --- ordinal heights --------------------------------------------------------


def prefix_closure(nodes: Iterable[PathNode]) -> set[PathNode]:
    out = set()
    for n in nodes:
        for k in range(len(n) + 1):
            out.add(tuple(n[:k]))
    return out


def remaining_height(nodes: Iterable[PathNode]) -> dict[PathNode, int]:
    """Height of the subtree below each node of the prefix-closed finite tree."""
    tree = prefix_closure(nodes)
    h = {}
    for n in sorted(tree, key=len, reverse=True):
        h[n] = 0
    for n in sorted(tree, key=len, reverse=True):
        if n:
            parent = n[:-1]
            h[parent] = max(h[parent], h[n] + 1)
    return h


def height_o(image: PathNode, h: Mapping[PathNode, Ordinal | int] | Callable) -> Ordinal:
    """Sum of omega^h(a) over a^<?> prefixes of ``image``, then omega^(h(image)+1)."""
    get = h if callable(h) else h.__getitem__
    total = Ordinal()
    for k, u in enumerate(image):
        if u is Q:
            total = total + omega_pow(_ord(get(tuple(image[:k]))))
    return total + omega_pow(_ord(get(tuple(image))) + 1)


def _ord(v) -> Ordinal:
    return v if isinstance(v, Ordinal) else Ordinal.of(v)


@dataclass(frozen=True)
class DescentViolation:
    first: int
    second: int
    before: Ordinal
    after: Ordinal


def verify_descent(trace: InjuryTrace, h=None) -> DescentViolation | None:
    """Check that o strictly decreases along every strictly extending source pair.

    ``h`` defaults to the remaining height of the tree spanned by the images.
    """
    if check_finite_injury(trace) is not None:
        raise ValueError("descent is only guaranteed for finite-injury traces")
    if h is None:
        h = remaining_height(trace.images)
    os = [height_o(img, h) for img in trace.images]
    for i, j in combinations(range(len(trace.steps)), 2):
        if is_proper_prefix(trace.steps[i][0], trace.steps[j][0]) and not os[j] < os[i]:
            return DescentViolation(i, j, os[i], os[j])
    return None
