"""Planar link diagrams as PD codes: parsing, validation, smoothing,
reduction, mirrors, and the structural predicates everything else builds on.

Conventions (fixed once, validated by the trefoil Jones test and the mirror
symmetry properties):

* A crossing stores its four arc ids counterclockwise with slot 0 the
  incoming under-strand; the under-strand runs 0 -> 2.
* ``over_in`` is the slot (1 or 3) where the over-strand enters; the crossing
  sign is +1 exactly when the over-strand enters at slot 3.
* The Zero smoothing joins slot pairs (0,1) and (2,3); Infinity joins (0,3)
  and (1,2).  Zero is the A-smoothing of the bracket relation.
* Free (crossingless) loops are a counter, not arcs.

Faces come from the rotation system: the dart "arrive at crossing c via slot
s" continues, face on the left, through the arc at slot s-1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Crossing",
    "LinkDiagram",
    "SmoothingKind",
    "DiagramError",
    "ParseError",
    "parse_pd",
    "assemble",
    "smooth",
    "writhe",
    "is_alternating",
    "is_split",
    "reduce_r1",
    "reduce_r2",
    "simplify_r1_r2",
    "is_nugatory",
    "canonical_key",
    "mirror",
    "connected_sum",
    "relabel_arcs",
    "to_pd",
]


class DiagramError(ValueError):
    """Structural problem with a diagram."""


class ParseError(DiagramError):
    """Malformed or inconsistent PD text."""


class SmoothingKind(enum.Enum):
    ZERO = "0"        # A-smoothing: joins slots (0,1) and (2,3)
    INFINITY = "inf"  # A^-1-smoothing: joins slots (0,3) and (1,2)


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    over_in: int  # 1 or 3

    def __post_init__(self):
        if len(self.slots) != 4:
            raise DiagramError(f"crossing needs 4 slots, got {self.slots}")
        if self.over_in not in (1, 3):
            raise DiagramError(f"over_in must be 1 or 3, got {self.over_in}")

    @property
    def sign(self) -> int:
        return 1 if self.over_in == 3 else -1


Occurrence = tuple[int, int]  # (crossing index, slot)


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable planar diagram: oriented crossings plus free unknot loops."""

    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    @property
    def n(self) -> int:
        return len(self.crossings)

    def arcs(self) -> list[int]:
        return sorted({a for x in self.crossings for a in x.slots})

    @cached_property
    def _occurrences(self) -> dict[int, tuple[Occurrence, ...]]:
        occ: dict[int, list[Occurrence]] = {}
        for ci, x in enumerate(self.crossings):
            for si, a in enumerate(x.slots):
                occ.setdefault(a, []).append((ci, si))
        return {a: tuple(v) for a, v in occ.items()}

    def other_end(self, ci: int, si: int) -> Occurrence:
        a = self.crossings[ci].slots[si]
        o1, o2 = self._occurrences[a]
        return o2 if o1 == (ci, si) else o1

    @cached_property
    def strands(self) -> tuple[tuple[Occurrence, ...], ...]:
        """Closed strands as cyclic tuples of entering occurrences, in the
        stored orientation (slot 0 and ``over_in`` are the entry slots)."""
        strands = []
        seen: set[Occurrence] = set()
        starts = [
            (ci, si)
            for ci, x in enumerate(self.crossings)
            for si in (0, x.over_in)
        ]
        for start in starts:
            if start in seen:
                continue
            walk = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                ci, si = cur
                cur = self.other_end(ci, (si + 2) % 4)
            strands.append(tuple(walk))
        return tuple(strands)

    @property
    def components(self) -> int:
        return len(self.strands) + self.free_loops

    @cached_property
    def faces(self) -> tuple[tuple[Occurrence, ...], ...]:
        """Faces of the planar embedding as cycles of arriving darts."""
        faces = []
        seen: set[Occurrence] = set()
        for ci in range(self.n):
            for si in range(4):
                if (ci, si) in seen:
                    continue
                cycle = []
                cur = (ci, si)
                while cur not in seen:
                    seen.add(cur)
                    cycle.append(cur)
                    cci, csi = cur
                    cur = self.other_end(cci, (csi + 3) % 4)
                faces.append(tuple(cycle))
        return tuple(faces)

    @cached_property
    def _face_of_dart(self) -> dict[Occurrence, int]:
        lookup = {}
        for fi, cycle in enumerate(self.faces):
            for dart in cycle:
                lookup[dart] = fi
        return lookup

    def face_at_corner(self, ci: int, corner: int) -> int:
        """Face touching the corner between slots ``corner`` and ``corner+1``."""
        return self._face_of_dart[(ci, (corner + 1) % 4)]

    @cached_property
    def crossing_groups(self) -> tuple[frozenset[int], ...]:
        """Connected components of the underlying 4-valent graph."""
        if self.n == 0:
            return ()
        adj: dict[int, set[int]] = {ci: set() for ci in range(self.n)}
        for occs in self._occurrences.values():
            (c1, _), (c2, _) = occs
            adj[c1].add(c2)
            adj[c2].add(c1)
        groups = []
        left = set(range(self.n))
        while left:
            root = min(left)
            todo, group = [root], {root}
            while todo:
                cur = todo.pop()
                for nxt in adj[cur]:
                    if nxt not in group:
                        group.add(nxt)
                        todo.append(nxt)
            groups.append(frozenset(group))
            left -= group
        return tuple(groups)

    def __str__(self) -> str:
        return to_pd(self)


# ---------------------------------------------------------------------------
# construction and validation


def _validate_arc_counts(slots_list: Sequence[Sequence[int]]) -> dict[int, list[Occurrence]]:
    occ: dict[int, list[Occurrence]] = {}
    for ci, slots in enumerate(slots_list):
        for si, a in enumerate(slots):
            occ.setdefault(a, []).append((ci, si))
    for a, v in occ.items():
        if len(v) != 2:
            raise DiagramError(f"arc {a} occurs {len(v)} times, expected 2")
    return occ


def _trace_components(slots_list, occ):
    """Cyclic entering-occurrence walks, one per strand, direction as found."""

    def other(ci, si):
        a = slots_list[ci][si]
        o1, o2 = occ[a]
        return o2 if o1 == (ci, si) else o1

    passages_seen: set[tuple[int, int]] = set()  # (crossing, slot parity)
    comps = []
    all_occs = sorted((ci, si) for ci in range(len(slots_list)) for si in range(4))
    for start in all_occs:
        if (start[0], start[1] % 2) in passages_seen:
            continue
        walk = []
        cur = start
        while (cur[0], cur[1] % 2) not in passages_seen:
            passages_seen.add((cur[0], cur[1] % 2))
            walk.append(cur)
            ci, si = cur
            cur = other(ci, (si + 2) % 4)
        comps.append(walk)
    return comps


def assemble(
    slots_list: Sequence[Sequence[int]],
    free_loops: int = 0,
    strict_orientation: bool = False,
) -> LinkDiagram:
    """Build a validated diagram from raw slot tuples.

    In strict mode (parsing) every under-strand must already enter at slot 0
    under some consistent strand orientation; conflicts raise.  In relaxed
    mode (internal rebuilds after smoothing or splicing) crossings are
    rotated by two slots where needed, which preserves the cyclic order.
    """
    slots_list = [tuple(s) for s in slots_list]
    if not slots_list:
        if free_loops < 1:
            raise DiagramError("empty diagram: need at least one component")
        return LinkDiagram((), free_loops)
    if free_loops < 0:
        raise DiagramError("negative free loop count")

    occ = _validate_arc_counts(slots_list)
    comps = _trace_components(slots_list, occ)

    rotations = [0] * len(slots_list)
    over_entry: dict[int, int] = {}
    for walk in comps:
        under_slots = {si for _, si in walk if si % 2 == 0}
        if under_slots == {0, 2}:
            if strict_orientation:
                raise ParseError("inconsistent orientation: under-strand "
                                 "enters at slot 0 and slot 2 on one strand")
        elif under_slots == {2}:
            # whole strand traced backwards: flip it
            walk = [
                (ci, (si + 2) % 4) for ci, si in reversed(walk)
            ]
        for ci, si in walk:
            if si % 2 == 0:
                if si == 2:
                    rotations[ci] = 2
            else:
                over_entry[ci] = si

    crossings = []
    for ci, slots in enumerate(slots_list):
        r = rotations[ci]
        if strict_orientation and r:
            raise ParseError("inconsistent orientation: incoming under-strand "
                             f"not at slot 0 of crossing {ci}")
        rotated = slots[r:] + slots[:r]
        over_in = (over_entry[ci] - r) % 4
        crossings.append(Crossing(rotated, over_in))

    d = LinkDiagram(tuple(crossings), free_loops)
    _validate_planar(d)
    return d


def _validate_planar(d: LinkDiagram) -> None:
    if d.n == 0:
        return
    face_count_by_group = {g: 0 for g in d.crossing_groups}
    group_of = {ci: g for g in d.crossing_groups for ci in g}
    for cycle in d.faces:
        face_count_by_group[group_of[cycle[0][0]]] += 1
    for g, f in face_count_by_group.items():
        if f != len(g) + 2:
            raise DiagramError(
                f"diagram is not planar: component with {len(g)} crossings "
                f"traces {f} faces, expected {len(g) + 2}"
            )


# ---------------------------------------------------------------------------
# PD text format


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text: ``X[a,b,c,d]`` tokens, ``O`` for free loops, ``#`` comments."""
    slots_list = []
    free_loops = 0
    for lineno, raw in enumerate(text.splitlines() or [""], start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            ch = line[pos]
            if ch.isspace() or ch == ",":
                pos += 1
                continue
            if ch in ("O", "o"):
                free_loops += 1
                pos += 1
                continue
            if ch in ("X", "x"):
                close = line.find("]", pos)
                if close == -1 or pos + 1 >= len(line) or line[pos + 1] != "[":
                    raise ParseError(f"line {lineno}: malformed crossing token "
                                     f"near {line[pos:pos + 20]!r}")
                body = line[pos + 2:close]
                parts = [p.strip() for p in body.split(",")]
                if len(parts) != 4:
                    raise ParseError(f"line {lineno}: crossing needs 4 arc ids: "
                                     f"X[{body}]")
                try:
                    slots = tuple(int(p) for p in parts)
                except ValueError:
                    raise ParseError(f"line {lineno}: non-integer arc id in "
                                     f"X[{body}]") from None
                slots_list.append(slots)
                pos = close + 1
                continue
            raise ParseError(f"line {lineno}: unexpected character {ch!r}")
    return assemble(slots_list, free_loops, strict_orientation=True)


def to_pd(d: LinkDiagram) -> str:
    tokens = [f"X[{x.slots[0]},{x.slots[1]},{x.slots[2]},{x.slots[3]}]" for x in d.crossings]
    tokens.extend("O" for _ in range(d.free_loops))
    return " ".join(tokens) if tokens else ""


# ---------------------------------------------------------------------------
# operations


def writhe(d: LinkDiagram) -> int:
    return sum(x.sign for x in d.crossings)


class _ArcJoiner:
    """Union-find over arc ids that counts closed loops as joins come in."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.loops = 0

    def find(self, a: int) -> int:
        self.parent.setdefault(a, a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def join(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.loops += 1
        else:
            self.parent[ra] = rb


def smooth(d: LinkDiagram, c: int, kind: SmoothingKind) -> LinkDiagram:
    """Replace crossing ``c`` by the given smoothing; new closed circles
    become free loops."""
    if not 0 <= c < d.n:
        raise IndexError(f"crossing index {c} out of range")
    s = d.crossings[c].slots
    if kind is SmoothingKind.ZERO:
        joins = [(s[0], s[1]), (s[2], s[3])]
    else:
        joins = [(s[0], s[3]), (s[1], s[2])]
    return _remove_crossing(d, c, joins)


def _remove_crossing(d: LinkDiagram, c: int, joins) -> LinkDiagram:
    uf = _ArcJoiner()
    for a, b in joins:
        uf.join(a, b)
    slots_list = [
        tuple(uf.find(a) for a in x.slots)
        for ci, x in enumerate(d.crossings)
        if ci != c
    ]
    return assemble(slots_list, d.free_loops + uf.loops)


def is_alternating(d: LinkDiagram) -> bool:
    """True iff along every strand the crossings alternate over/under."""
    for walk in d.strands:
        kinds = [si % 2 for _, si in walk]  # 0 = under entry, 1 = over entry
        m = len(kinds)
        if any(kinds[i] == kinds[(i + 1) % m] for i in range(m)):
            return False
    return True


def is_split(d: LinkDiagram) -> bool:
    if d.n == 0:
        return d.free_loops >= 2
    if d.free_loops > 0:
        return True
    return len(d.crossing_groups) > 1


def _find_kink(d: LinkDiagram) -> tuple[int, int] | None:
    for ci, x in enumerate(d.crossings):
        for si in range(4):
            if x.slots[si] == x.slots[(si + 1) % 4]:
                return ci, si
    return None


def reduce_r1(d: LinkDiagram) -> tuple[LinkDiagram, int]:
    """Remove all R1 kinks; returns (reduced, w) with ``<d> = (-A^3)^w <reduced>``."""
    twist = 0
    while True:
        hit = _find_kink(d)
        if hit is None:
            return d, twist
        ci, si = hit
        s = d.crossings[ci].slots
        # kink arc occupies slots si, si+1; they are a Zero join pair exactly
        # when si is even, and the Zero-closed kink contributes (-A^3)^(+1)
        twist += 1 if si % 2 == 0 else -1
        d = _remove_crossing(d, ci, [(s[(si + 2) % 4], s[(si + 3) % 4])])


def reduce_r2(d: LinkDiagram) -> tuple[LinkDiagram, bool]:
    """Remove one cancellable R2 bigon if present (regular isotopy; the
    bracket and all determinants are unchanged)."""
    hit = None
    for cycle in d.faces:
        if len(cycle) != 2 or cycle[0][0] == cycle[1][0]:
            continue
        (c1, s1), (c2, s2) = cycle
        sides = (d.crossings[c1].slots[s1], d.crossings[c2].slots[s2])
        over1 = tuple(si % 2 for _, si in d._occurrences[sides[0]])
        over2 = tuple(si % 2 for _, si in d._occurrences[sides[1]])
        if over1 in ((0, 0), (1, 1)) and over2 in ((0, 0), (1, 1)) \
                and over1 != over2:
            hit = (c1, c2, sides)
            break
    if hit is None:
        return d, False
    c1, c2, sides = hit
    uf = _ArcJoiner()
    for arc in sides:
        for oc, os in d._occurrences[arc]:
            uf.join(d.crossings[oc].slots[(os + 2) % 4], arc)
    slots_list = [
        tuple(uf.find(a) for a in x.slots)
        for ci, x in enumerate(d.crossings)
        if ci not in (c1, c2)
    ]
    return assemble(slots_list, d.free_loops + uf.loops), True


def simplify_r1_r2(d: LinkDiagram) -> tuple[LinkDiagram, int]:
    """Iterate R1 kink removal and cancellable R2 bigon removal to a fixed
    point; returns (diagram, w) with ``<d> = (-A^3)^w <result>``."""
    twist = 0
    while True:
        d, w = reduce_r1(d)
        twist += w
        d, changed = reduce_r2(d)
        if not changed:
            return d, twist


def is_nugatory(d: LinkDiagram, c: int) -> bool:
    """A crossing is nugatory iff one face touches two opposite corners of it."""
    if not 0 <= c < d.n:
        raise IndexError(f"crossing index {c} out of range")
    return (
        d.face_at_corner(c, 0) == d.face_at_corner(c, 2)
        or d.face_at_corner(c, 1) == d.face_at_corner(c, 3)
    )


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Switch every crossing over<->under (the projection is unchanged)."""
    crossings = []
    for x in d.crossings:
        r = x.over_in  # rotate so the old over-entry becomes slot 0
        rotated = x.slots[r:] + x.slots[:r]
        crossings.append(Crossing(rotated, (0 - r) % 4))
    return LinkDiagram(tuple(crossings), d.free_loops)


def relabel_arcs(d: LinkDiagram, mapping: dict[int, int]) -> LinkDiagram:
    """Rename arcs; mapping must be injective on the diagram's arcs."""
    values = [mapping[a] for a in d.arcs()]
    if len(set(values)) != len(values):
        raise DiagramError("arc relabeling is not injective")
    crossings = tuple(
        Crossing(tuple(mapping[a] for a in x.slots), x.over_in) for x in d.crossings
    )
    return LinkDiagram(crossings, d.free_loops)


def connected_sum(d1: LinkDiagram, d2: LinkDiagram,
                  arc1: int | None = None, arc2: int | None = None) -> LinkDiagram:
    """Join two diagrams along one arc of each (corpus-building helper)."""
    if d1.n == 0 or d2.n == 0:
        raise DiagramError("connected sum needs crossings on both sides")
    shift = max(d1.arcs()) + 1
    d2s = relabel_arcs(d2, {a: a + shift for a in d2.arcs()})
    a1 = arc1 if arc1 is not None else min(d1.arcs())
    a2 = (arc2 + shift) if arc2 is not None else min(d2s.arcs())
    occ1 = [(ci, si) for ci, x in enumerate(d1.crossings) for si in range(4)
            if x.slots[si] == a1]
    occ2 = [(ci, si) for ci, x in enumerate(d2s.crossings) for si in range(4)
            if x.slots[si] == a2]
    fresh = max(max(d1.arcs()), max(d2s.arcs())) + 1
    slots_list = [list(x.slots) for x in d1.crossings] + \
                 [list(x.slots) for x in d2s.crossings]
    n1 = d1.n
    # cut a1 and a2 and cross-join so each new arc pairs an under-strand end
    # with an over-strand end; joining two alternating diagrams this way
    # keeps the composite alternating
    (c1a, s1a), (c1b, s1b) = occ1
    (c2a, s2a), (c2b, s2b) = occ2
    if (s1a % 2 == 0) == (s2a % 2 == 0):
        (c2a, s2a), (c2b, s2b) = (c2b, s2b), (c2a, s2a)
    slots_list[n1 + c2a][s2a] = a1
    slots_list[c1b][s1b] = fresh
    slots_list[n1 + c2b][s2b] = fresh
    return assemble(slots_list, d1.free_loops + d2.free_loops)


# ---------------------------------------------------------------------------
# canonical keys


def canonical_key(d: LinkDiagram) -> str:
    """Stable key, equal for diagrams identical up to arc relabeling and
    crossing reordering (orientation choice is ignored; over/under is not).

    Encoding: breadth-first traversal from every (root, rotation) choice
    within a connected group, rotating each crossing by two slots on
    discovery so its entry slot is 0 or 1; the lexicographically smallest
    dart table wins.  Split diagrams encode each group separately, sorted.
    """
    if d.n == 0:
        return f"U{d.free_loops}"
    groups = sorted(_bfs_encode_group(d, g) for g in d.crossing_groups)
    return f"{tuple(groups)}|L{d.free_loops}"


def _bfs_encode_group(d: LinkDiagram, group: frozenset[int]) -> tuple:
    best = None
    for root in sorted(group):
        for rot in (0, 2):
            enc = _bfs_encode_from(d, root, rot)
            if best is None or enc < best:
                best = enc
    return best


def _bfs_encode_from(d: LinkDiagram, root: int, root_rot: int) -> tuple:
    index: dict[int, int] = {root: 0}
    rotation: dict[int, int] = {root: root_rot}
    order = [root]
    out: list[tuple[int, int]] = []
    qi = 0
    while qi < len(order):
        ci = order[qi]
        qi += 1
        r = rotation[ci]
        for s in range(4):
            raw = (s + r) % 4
            cj, sj_raw = d.other_end(ci, raw)
            if cj not in index:
                index[cj] = len(order)
                rotation[cj] = sj_raw if sj_raw % 2 == 0 else (sj_raw - 1) % 4
                order.append(cj)
            out.append((index[cj], (sj_raw - rotation[cj]) % 4))
    return tuple(out)
