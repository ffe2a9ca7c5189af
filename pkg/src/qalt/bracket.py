"""Kauffman bracket by exhaustive state sum, an independent skein-recursion
evaluator used as its oracle, and the Jones polynomial / determinant / span
of a diagram.

The state sum is sum over all smoothing assignments S of
``A^(alpha(S) - beta(S)) * (-A^2 - A^-2)^(circles(S) - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkDiagram, SmoothingKind, canonical_key, smooth
from .laurent import JonesPoly, LaurentPoly, jones_from_bracket

__all__ = [
    "StateSummary",
    "kauffman_bracket",
    "kauffman_bracket_skein",
    "jones",
    "determinant",
    "span",
    "DELTA",
    "STATE_SUM_LIMIT",
]

DELTA = LaurentPoly({2: -1, -2: -1}, "A")  # bracket of two split circles
STATE_SUM_LIMIT = 20


@dataclass(frozen=True)
class StateSummary:
    """One state of the sum: smoothing counts and resulting circle count."""

    alpha: int
    beta: int
    loops: int


def _delta_power(k: int) -> LaurentPoly:
    return DELTA ** k


class _CircleCounter:
    """Union-find over arc ids; counts circles closed by successive joins."""

    __slots__ = ("parent", "loops")

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.loops = 0

    def find(self, a: int) -> int:
        p = self.parent
        p.setdefault(a, a)
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def join(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.loops += 1
        else:
            self.parent[ra] = rb


def states(d: LinkDiagram):
    """Iterate (StateSummary) over all 2^n smoothing assignments."""
    n = d.n
    slot_pairs_zero = [((x.slots[0], x.slots[1]), (x.slots[2], x.slots[3]))
                       for x in d.crossings]
    slot_pairs_inf = [((x.slots[0], x.slots[3]), (x.slots[1], x.slots[2]))
                      for x in d.crossings]
    for mask in range(1 << n):
        uf = _CircleCounter()
        alpha = 0
        for ci in range(n):
            if mask >> ci & 1:
                pairs = slot_pairs_inf[ci]
            else:
                pairs = slot_pairs_zero[ci]
                alpha += 1
            uf.join(*pairs[0])
            uf.join(*pairs[1])
        yield StateSummary(alpha, n - alpha, uf.loops)


def kauffman_bracket(d: LinkDiagram) -> LaurentPoly:
    """Exact bracket by the state sum; guarded to diagrams of desk scale."""
    if d.n > STATE_SUM_LIMIT:
        raise ValueError(
            f"state sum over 2^{d.n} states refused; limit is {STATE_SUM_LIMIT} crossings"
        )
    if d.n == 0:
        return _delta_power(d.free_loops - 1) if d.free_loops else LaurentPoly.one("A")
    total = LaurentPoly.zero("A")
    for st in states(d):
        circles = st.loops + d.free_loops
        term = _delta_power(circles - 1).shift(st.alpha - st.beta)
        total = total + term
    return total


def kauffman_bracket_skein(d: LinkDiagram, _memo: dict | None = None) -> LaurentPoly:
    """Bracket by the skein relation <L> = A<L_0> + A^-1<L_inf>, memoized on
    canonical keys.  Independent of the state sum; used as its oracle."""
    memo = _memo if _memo is not None else {}
    return _skein(d, memo)


def _skein(d: LinkDiagram, memo: dict) -> LaurentPoly:
    # strip free loops into a delta-power factor before recursing
    loops = d.free_loops
    if loops:
        d = LinkDiagram(d.crossings, 0)
    if d.n == 0:
        return _delta_power(loops - 1)  # pure unlink of `loops` circles
    key = canonical_key(d)
    cached = memo.get(key)
    if cached is None:
        zero = _skein(smooth(d, 0, SmoothingKind.ZERO), memo)
        inf = _skein(smooth(d, 0, SmoothingKind.INFINITY), memo)
        cached = zero.shift(1) + inf.shift(-1)
        memo[key] = cached
    return cached * _delta_power(loops) if loops else cached


def jones(d: LinkDiagram, engine=None) -> JonesPoly:
    """Jones polynomial (-A^3)^(-w) <L> with A^4 = t^-1, in q = t^(1/2)."""
    from .diagram import writhe

    bracket = (engine or kauffman_bracket)(d)
    return jones_from_bracket(bracket, writhe(d), d.components)


def determinant(d: LinkDiagram, engine=None) -> int:
    """|V_L(-1)| evaluated exactly over the Gaussian integers."""
    return jones(d, engine=engine).determinant()


def span(d: LinkDiagram, engine=None) -> int:
    """max - min t-exponent of the Jones polynomial."""
    return jones(d, engine=engine).span()
