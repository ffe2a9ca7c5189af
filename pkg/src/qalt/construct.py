"""Programmatic diagram builders used for the bundled corpus and tests:
braid closures, pretzel links, and (2,n) torus links.

Braid convention: strands run downward; the positive generator ``i`` crosses
the strand in position i over... the strand entering from the left passes
under for a positive letter, so sigma_1^3 closes to a trefoil and
sigma_1^n to the (2,n) torus link.
"""

from __future__ import annotations

from .diagram import LinkDiagram, assemble
from .tangle import twist_tangle

__all__ = ["braid_closure", "pretzel", "torus2"]


def braid_closure(word: list[int], strands: int) -> LinkDiagram:
    """Close the braid given by ``word`` (letters +-1..+-(strands-1))."""
    if strands < 2:
        raise ValueError("need at least 2 strands")
    for w in word:
        if w == 0 or abs(w) >= strands:
            raise ValueError(f"letter {w} out of range for {strands} strands")
    next_arc = strands + 1
    start = list(range(1, strands + 1))
    cur = list(start)
    slots_list = []
    for w in word:
        i = abs(w) - 1
        a, b = cur[i], cur[i + 1]
        c, d = next_arc, next_arc + 1
        next_arc += 2
        if w > 0:
            # NW->SE strand (a to d) under; ccw slots from NW: NW, SW, SE, NE
            slots_list.append((a, c, d, b))
        else:
            # NE->SW strand (b to c) under; ccw slots from NE: NE, NW, SW, SE
            slots_list.append((b, a, c, d))
        cur[i], cur[i + 1] = c, d
    # close the braid: rename each bottom arc to its top partner
    rename = {}
    loops = 0

    def find(x):
        while x in rename:
            x = rename[x]
        return x

    for top, bottom in zip(start, cur):
        rt, rb = find(top), find(bottom)
        if rt == rb:
            loops += 1
        else:
            rename[rb] = rt
    slots_list = [tuple(find(a) for a in s) for s in slots_list]
    return assemble(slots_list, loops if slots_list == [] else loops)


def pretzel(*twists: int) -> LinkDiagram:
    """The pretzel link P(p_1, ..., p_k): vertical twist bands joined by a
    top and a bottom rail."""
    if len(twists) < 2:
        raise ValueError("need at least 2 bands")
    if any(t == 0 for t in twists):
        raise ValueError("zero bands are not supported")
    crossings: list[tuple[int, int, int, int]] = []
    ends = []  # per band: (SW, SE, NW, NE) arc ids
    offset = 0
    for p in twists:
        t = twist_tangle(abs(p), "horizontal", +1 if p > 0 else -1)
        shift = offset
        crossings.extend(tuple(a + shift for a in s) for s in t.crossings)
        b = t.boundary
        ends.append((b["SW"] + shift, b["SE"] + shift, b["NW"] + shift, b["NE"] + shift))
        offset += t.max_arc() + 1
    rename: dict[int, int] = {}
    loops = 0

    def find(x):
        while x in rename:
            x = rename[x]
        return x

    def join(x, y):
        nonlocal loops
        rx, ry = find(x), find(y)
        if rx == ry:
            loops += 1
        else:
            rename[ry] = rx

    k = len(twists)
    for j in range(k):
        sw, se, nw, ne = ends[j]
        sw2, se2, nw2, ne2 = ends[(j + 1) % k]
        join(ne, nw2)   # top rail
        join(se, sw2)   # bottom rail
    slots_list = [tuple(find(a) for a in s) for s in crossings]
    return assemble(slots_list, loops)


def torus2(n: int) -> LinkDiagram:
    """The (2, n) torus link as the closure of sigma_1^n."""
    if n < 1:
        raise ValueError("need n >= 1")
    return braid_closure([1] * n, 2)
