"""Four-ended tangles: parsing, closures, crossing classification, signs,
bracket decomposition, twist families, generation, and insertion of a tangle
into a link crossing.

Frame conventions (fixed once; they reproduce <N([0])> = delta, <N([inf])> = 1
and make the single crossing with under-strand along the SW-NE diagonal a
positive tangle):

* boundary ends NW, NE, SW, SE; counterclockwise disk order SE, NE, NW, SW;
* the four boundary regions are S (between SW and SE), E (SE-NE),
  N (NE-NW), W (NW-SW);
* [0] is the horizontal pairing {NW-NE, SW-SE}, [inf] the vertical pairing;
  the numerator closure N joins top and bottom ([0]-style), the denominator
  closure D joins left and right;
* the canonical checkerboard coloring of a tangle shades E and W, and a
  tangle is positive when every Tait edge under that coloring is positive.

Tangle crossings are bare counterclockwise slot 4-tuples with the
under-strand on slots 0-2; tangles carry no strand orientation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .diagram import LinkDiagram, assemble, canonical_key, is_nugatory
from .laurent import LaurentPoly, is_alternating_poly, max_gap
from .taitgraph import TaitEdge, TaitGraph

__all__ = [
    "Tangle",
    "TangleSign",
    "BracketPair",
    "TangleError",
    "TypeMismatchError",
    "UnreducedTangleError",
    "parse_tangle",
    "to_tangle_text",
    "numerator",
    "denominator",
    "classify_crossing",
    "CrossingClass",
    "tangle_sign",
    "extends",
    "tangle_tait",
    "bracket_decompose",
    "smooth_tangle",
    "reduce_tangle_r1",
    "mirror_tangle",
    "insert",
    "twist_tangle",
    "enumerate_alternating_tangles",
    "is_twist_tangle",
    "prop41_check",
    "lemma43_check",
    "Prop41Report",
    "Lemma43Report",
]

ENDS = ("NW", "NE", "SW", "SE")
CCW_NEXT = {"SE": "NE", "NE": "NW", "NW": "SW", "SW": "SE"}
SEGMENT_REGION = {"SE": "E", "NE": "N", "NW": "W", "SW": "S"}  # segment P -> ccw_next(P)

DELTA = LaurentPoly({2: -1, -2: -1}, "A")


class TangleError(ValueError):
    pass


class TypeMismatchError(TangleError):
    """Tangle sign does not match the crossing being extended."""


class UnreducedTangleError(TangleError):
    """Operation requires a kink-free tangle."""


class TangleSign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"
    NON_ALTERNATING = "non-alternating"


class CrossingClass(enum.Enum):
    NUGATORY = "nugatory"
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


End = tuple  # ('C', ci, si) or ('B', position)


@dataclass(frozen=True)
class Tangle:
    crossings: tuple[tuple[int, int, int, int], ...]
    boundary: dict[str, int]  # position NW/NE/SW/SE -> arc id
    free_loops: int = 0

    def __post_init__(self):
        if set(self.boundary) != set(ENDS):
            raise TangleError(f"boundary must name {ENDS}, got {sorted(self.boundary)}")
        object.__setattr__(self, "boundary", dict(self.boundary))
        counts: dict[int, int] = {}
        for slots in self.crossings:
            if len(slots) != 4:
                raise TangleError(f"crossing needs 4 slots: {slots}")
            for a in slots:
                counts[a] = counts.get(a, 0) + 1
        for p in ENDS:
            a = self.boundary[p]
            counts[a] = counts.get(a, 0) + 1
        bad = {a: k for a, k in counts.items() if k != 2}
        if bad:
            raise TangleError(f"arc ends must pair up exactly; bad arcs {bad}")

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def _arc_ends(self) -> dict[int, tuple[End, End]]:
        ends: dict[int, list[End]] = {}
        for ci, slots in enumerate(self.crossings):
            for si, a in enumerate(slots):
                ends.setdefault(a, []).append(("C", ci, si))
        for p in ENDS:
            ends.setdefault(self.boundary[p], []).append(("B", p))
        return {a: tuple(v) for a, v in ends.items()}

    def other_end(self, arc: int, this: End) -> End:
        e1, e2 = self._arc_ends[arc]
        return e2 if e1 == this else e1

    @cached_property
    def is_connected(self) -> bool:
        """Connected as a diagram fragment (no free loops, crossings plus
        all four boundary strands in one piece)."""
        if self.n == 0 or self.free_loops:
            return False
        adj: dict[End, set[End]] = {}
        for a, (e1, e2) in self._arc_ends.items():
            n1 = e1 if e1[0] == "B" else ("C", e1[1])
            n2 = e2 if e2[0] == "B" else ("C", e2[1])
            adj.setdefault(n1, set()).add(n2)
            adj.setdefault(n2, set()).add(n1)
        start = ("C", 0)
        seen = {start}
        todo = [start]
        while todo:
            cur = todo.pop()
            for nxt in adj.get(cur, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        want = {("C", ci) for ci in range(self.n)} | {("B", p) for p in ENDS}
        return seen == want

    @cached_property
    def faces(self) -> tuple[tuple, ...]:
        """Disk faces: each face is (steps, segments) where a step is
        (arc, source end, target end) and segments name boundary regions
        (E/N/W/S) the face runs along."""
        visited: set[End] = set()
        faces = []
        arrivals = [("C", ci, si) for ci in range(self.n) for si in range(4)]
        arrivals += [("B", p) for p in ENDS]
        for start in arrivals:
            if start in visited:
                continue
            steps = []
            segments = []
            cur = start
            while cur not in visited:
                visited.add(cur)
                if cur[0] == "C":
                    _, ci, si = cur
                    exit_end: End = ("C", ci, (si + 3) % 4)
                    arc = self.crossings[ci][(si + 3) % 4]
                else:
                    p = cur[1]
                    q = CCW_NEXT[p]
                    segments.append(SEGMENT_REGION[p])
                    exit_end = ("B", q)
                    arc = self.boundary[q]
                nxt = self.other_end(arc, exit_end)
                steps.append((arc, exit_end, nxt))
                cur = nxt
            faces.append((tuple(steps), tuple(segments)))
        return tuple(faces)

    @cached_property
    def _face_of_arrival(self) -> dict[End, int]:
        lookup = {}
        for fi, (steps, _) in enumerate(self.faces):
            for arc, src, dst in steps:
                lookup[dst] = fi
        return lookup

    def face_at_corner(self, ci: int, corner: int) -> int:
        return self._face_of_arrival[("C", ci, (corner + 1) % 4)]

    def region_face(self, region: str) -> int:
        """Face index of boundary region E, N, W or S."""
        for fi, (_, segments) in enumerate(self.faces):
            if region in segments:
                return fi
        raise TangleError(f"region {region} not found")

    def validate_planar(self) -> None:
        if self.is_connected and len(self.faces) != self.n + 3:
            raise TangleError(
                f"tangle not planar: {len(self.faces)} faces for {self.n} crossings"
            )

    def max_arc(self) -> int:
        arcs = {a for slots in self.crossings for a in slots}
        arcs.update(self.boundary.values())
        return max(arcs)

    def __str__(self) -> str:
        return to_tangle_text(self)


# ---------------------------------------------------------------------------
# parse / serialize


def parse_tangle(text: str) -> Tangle:
    """PD-style tokens plus one ``B[nw,ne,sw,se]`` boundary declaration."""
    cleaned = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    crossings = []
    boundary = None
    free_loops = 0
    pos = 0
    while pos < len(cleaned):
        ch = cleaned[pos]
        if ch.isspace() or ch == ",":
            pos += 1
            continue
        if ch in ("O", "o"):
            free_loops += 1
            pos += 1
            continue
        if ch in ("X", "x", "B", "b"):
            close = cleaned.find("]", pos)
            if close == -1 or pos + 1 >= len(cleaned) or cleaned[pos + 1] != "[":
                raise TangleError(f"malformed token near {cleaned[pos:pos+20]!r}")
            parts = [p.strip() for p in cleaned[pos + 2:close].split(",")]
            try:
                vals = tuple(int(p) for p in parts)
            except ValueError:
                raise TangleError(f"non-integer arc id in {cleaned[pos:close+1]!r}") from None
            if ch in ("X", "x"):
                if len(vals) != 4:
                    raise TangleError("crossing needs 4 arc ids")
                crossings.append(vals)
            else:
                if boundary is not None:
                    raise TangleError("duplicate boundary declaration")
                if len(vals) != 4:
                    raise TangleError("boundary needs exactly 4 arc ends: B[nw,ne,sw,se]")
                boundary = {"NW": vals[0], "NE": vals[1], "SW": vals[2], "SE": vals[3]}
            pos = close + 1
            continue
        raise TangleError(f"unexpected character {ch!r} in tangle text")
    if boundary is None:
        raise TangleError("missing B[nw,ne,sw,se] boundary declaration")
    t = Tangle(tuple(crossings), boundary, free_loops)
    if not t.is_connected:
        raise TangleError("disconnected tangle fragments are not accepted")
    t.validate_planar()
    return t


def to_tangle_text(t: Tangle) -> str:
    tokens = [f"X[{s[0]},{s[1]},{s[2]},{s[3]}]" for s in t.crossings]
    b = t.boundary
    tokens.append(f"B[{b['NW']},{b['NE']},{b['SW']},{b['SE']}]")
    tokens.extend("O" for _ in range(t.free_loops))
    return " ".join(tokens)


# ---------------------------------------------------------------------------
# closures


class _Joiner:
    def __init__(self):
        self.parent: dict[int, int] = {}
        self.loops = 0

    def find(self, a):
        p = self.parent
        p.setdefault(a, a)
        r = a
        while p[r] != r:
            r = p[r]
        while p[a] != r:
            p[a], a = r, p[a]
        return r

    def join(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.loops += 1
        else:
            self.parent[ra] = rb


def _close(t: Tangle, pairs) -> LinkDiagram:
    uf = _Joiner()
    for p, q in pairs:
        uf.join(t.boundary[p], t.boundary[q])
    slots_list = [tuple(uf.find(a) for a in slots) for slots in t.crossings]
    return assemble(slots_list, t.free_loops + uf.loops)


def numerator(t: Tangle) -> LinkDiagram:
    """Close the top and the bottom: NW-NE and SW-SE."""
    return _close(t, [("NW", "NE"), ("SW", "SE")])


def denominator(t: Tangle) -> LinkDiagram:
    """Close the two sides: NW-SW and NE-SE."""
    return _close(t, [("NW", "SW"), ("NE", "SE")])


def boundary_pairing(t: Tangle) -> str:
    """How the boundary ends connect through the tangle: '0', 'inf' or 'x'."""
    adj: dict[End, End] = {}
    partner = {}
    for a, (e1, e2) in t._arc_ends.items():
        adj[e1] = e2
        adj[e2] = e1
    cur: End = ("B", "NW")
    while True:
        nxt = adj[cur]
        if nxt[0] == "B":
            mate = nxt[1]
            break
        _, ci, si = nxt
        cur = ("C", ci, (si + 2) % 4)
    return {"NE": "0", "SW": "inf", "SE": "x"}[mate]


# ---------------------------------------------------------------------------
# predicates and signs


def classify_crossing(t: Tangle, c: int) -> CrossingClass:
    """Nugatory in both closures / in exactly one (trivial) / in neither."""
    if not 0 <= c < t.n:
        raise IndexError(f"crossing index {c} out of range")
    in_n = is_nugatory(numerator(t), c)
    in_d = is_nugatory(denominator(t), c)
    if in_n and in_d:
        return CrossingClass.NUGATORY
    if in_n or in_d:
        return CrossingClass.TRIVIAL
    return CrossingClass.NONTRIVIAL


def _is_alternating_fragment(t: Tangle) -> bool:
    """Crossings alternate over/under along every strand; open strands have
    no wrap-around constraint, closed loops inside the tangle do."""
    adj: dict[End, End] = {}
    for a, (e1, e2) in t._arc_ends.items():
        adj[e1] = e2
        adj[e2] = e1
    seen: set[End] = set()
    # open strands, from each boundary end
    for p in ENDS:
        start: End = ("B", p)
        if start in seen:
            continue
        seen.add(start)
        kinds = []
        cur = adj[start]
        while cur[0] == "C":
            seen.add(cur)
            _, ci, si = cur
            kinds.append(si % 2)
            exit_end: End = ("C", ci, (si + 2) % 4)
            seen.add(exit_end)
            cur = adj[exit_end]
        seen.add(cur)
        if any(a == b for a, b in zip(kinds, kinds[1:])):
            return False
    # closed loops through crossings
    for ci in range(t.n):
        for si in range(4):
            start = ("C", ci, si)
            if start in seen:
                continue
            kinds = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                _, cci, csi = cur
                kinds.append(csi % 2)
                exit_end = ("C", cci, (csi + 2) % 4)
                seen.add(exit_end)
                cur = adj[exit_end]
            m = len(kinds)
            if any(kinds[i] == kinds[(i + 1) % m] for i in range(m)):
                return False
    return True


def tangle_tait(t: Tangle, shading: str = "EW") -> tuple[TaitGraph, int, int]:
    """Tait graph of the tangle under its canonical coloring.

    ``shading='EW'`` shades the E and W boundary regions (the canonical
    coloring); ``'NS'`` shades N and S.  Returns (graph, u1, u2) with u1, u2
    the two shaded boundary-region faces (E,W or N,S)."""
    if shading not in ("EW", "NS"):
        raise TangleError("shading must be 'EW' or 'NS'")
    u1 = t.region_face("E" if shading == "EW" else "N")
    u2 = t.region_face("W" if shading == "EW" else "S")
    # 2-color faces starting from u1
    adjacency: dict[int, set[int]] = {fi: set() for fi in range(len(t.faces))}
    for a, (e1, e2) in t._arc_ends.items():
        f1 = t._face_of_arrival[e1]
        f2 = t._face_of_arrival[e2]
        adjacency[f1].add(f2)
        adjacency[f2].add(f1)
    color = {u1: 0}
    todo = [u1]
    while todo:
        cur = todo.pop()
        for nxt in adjacency[cur]:
            if nxt not in color:
                color[nxt] = 1 - color[cur]
                todo.append(nxt)
            elif color[nxt] == color[cur]:
                raise TangleError("tangle faces are not 2-colorable")
    if color.get(u2) != 0:
        raise TangleError("boundary regions do not 2-color consistently")
    shaded = {fi for fi, cval in color.items() if cval == 0}
    edges = []
    for ci in range(t.n):
        corners = [t.face_at_corner(ci, k) for k in range(4)]
        if corners[1] in shaded:
            edges.append(TaitEdge(corners[1], corners[3], +1, ci))
        else:
            edges.append(TaitEdge(corners[0], corners[2], -1, ci))
    return TaitGraph(tuple(sorted(shaded)), tuple(edges), 0), u1, u2


def tangle_sign(t: Tangle) -> TangleSign:
    """Alternation check plus Tait-edge sign uniformity under the canonical
    E/W shading."""
    if not _is_alternating_fragment(t):
        return TangleSign.NON_ALTERNATING
    if t.n == 0:
        return TangleSign.MIXED  # no crossings: no sign to speak of
    g, _, _ = tangle_tait(t, "EW")
    signs = {e.sign for e in g.edges}
    if signs == {1}:
        return TangleSign.POSITIVE
    if signs == {-1}:
        return TangleSign.NEGATIVE
    return TangleSign.MIXED


def extends(t: Tangle, crossing_sign: int) -> bool:
    """True iff the tangle's sign matches the Tait sign of the crossing it
    is meant to replace."""
    s = tangle_sign(t)
    if crossing_sign > 0:
        return s is TangleSign.POSITIVE
    return s is TangleSign.NEGATIVE


# ---------------------------------------------------------------------------
# bracket decomposition


@dataclass(frozen=True)
class BracketPair:
    """<T> = F <[0]> + G <[inf]>, plus the normalized form of the positive
    (or mirrored negative) convention: <T> = A f <[0]> + A^-1 g <[inf]> for
    positive tangles, <T> = A^-1 f <[0]> + A g <[inf]> for negative ones."""

    F: LaurentPoly
    G: LaurentPoly
    normalization: str  # 'positive', 'negative' or 'raw'

    @property
    def f(self) -> LaurentPoly:
        if self.normalization == "positive":
            return self.F.shift(-1)
        if self.normalization == "negative":
            return self.F.shift(1)
        raise TangleError("no normalized form for a mixed or non-alternating tangle")

    @property
    def g(self) -> LaurentPoly:
        if self.normalization == "positive":
            return self.G.shift(1)
        if self.normalization == "negative":
            return self.G.shift(-1)
        raise TangleError("no normalized form for a mixed or non-alternating tangle")

    def numerator_bracket(self) -> LaurentPoly:
        return self.F * DELTA + self.G

    def denominator_bracket(self) -> LaurentPoly:
        return self.F + self.G * DELTA


def bracket_decompose(t: Tangle) -> BracketPair:
    """State sum over the tangle; each state lands in F or G by the planar
    pairing of its two leftover boundary arcs."""
    F = LaurentPoly.zero("A")
    G = LaurentPoly.zero("A")
    n = t.n
    base_pairs = []
    for slots in t.crossings:
        base_pairs.append((
            ((slots[0], slots[1]), (slots[2], slots[3])),   # Zero / A-smoothing
            ((slots[0], slots[3]), (slots[1], slots[2])),   # Infinity
        ))
    for mask in range(1 << n):
        uf = _Joiner()
        alpha = 0
        for ci in range(n):
            zero_pairs, inf_pairs = base_pairs[ci]
            pairs = inf_pairs if mask >> ci & 1 else zero_pairs
            if not mask >> ci & 1:
                alpha += 1
            uf.join(*pairs[0])
            uf.join(*pairs[1])
        nw = uf.find(t.boundary["NW"])
        ne = uf.find(t.boundary["NE"])
        sw = uf.find(t.boundary["SW"])
        se = uf.find(t.boundary["SE"])
        term = (DELTA ** (uf.loops + t.free_loops)).shift(alpha - (n - alpha))
        if nw == ne and sw == se and nw != sw:
            F = F + term
        elif nw == sw and ne == se and nw != ne:
            G = G + term
        elif nw == ne == sw == se:
            raise TangleError("state connects all four ends; not planar")
        else:
            raise TangleError("state pairs boundary ends diagonally; not planar")
    sign = tangle_sign(t)
    norm = {TangleSign.POSITIVE: "positive", TangleSign.NEGATIVE: "negative"}.get(sign, "raw")
    return BracketPair(F, G, norm)


# ---------------------------------------------------------------------------
# smoothing, reduction, mirror


def smooth_tangle(t: Tangle, c: int, kind) -> Tangle:
    """Smooth crossing ``c`` inside the tangle.  The result may be
    disconnected (``is_connected`` False); that is flagged, not fatal."""
    from .diagram import SmoothingKind

    if not 0 <= c < t.n:
        raise IndexError(f"crossing index {c} out of range")
    s = t.crossings[c]
    if kind is SmoothingKind.ZERO:
        joins = [(s[0], s[1]), (s[2], s[3])]
    else:
        joins = [(s[0], s[3]), (s[1], s[2])]
    return _remove_tangle_crossing(t, c, joins)


def _remove_tangle_crossing(t: Tangle, c: int, joins) -> Tangle:
    uf = _Joiner()
    for a, b in joins:
        uf.join(a, b)
    crossings = tuple(
        tuple(uf.find(a) for a in slots)
        for ci, slots in enumerate(t.crossings)
        if ci != c
    )
    boundary = {p: uf.find(a) for p, a in t.boundary.items()}
    return Tangle(crossings, boundary, t.free_loops + uf.loops)


def _find_tangle_kink(t: Tangle):
    for ci, slots in enumerate(t.crossings):
        for si in range(4):
            if slots[si] == slots[(si + 1) % 4]:
                return ci, si
    return None


def reduce_tangle_r1(t: Tangle) -> tuple[Tangle, int]:
    """Remove R1 kinks; <t> = (-A^3)^w <reduced>."""
    twist = 0
    while True:
        hit = _find_tangle_kink(t)
        if hit is None:
            return t, twist
        ci, si = hit
        s = t.crossings[ci]
        twist += 1 if si % 2 == 0 else -1
        t = _remove_tangle_crossing(t, ci, [(s[(si + 2) % 4], s[(si + 3) % 4])])


def mirror_tangle(t: Tangle) -> Tangle:
    """Switch every crossing; positive tangles become negative and back."""
    crossings = tuple((s[1], s[2], s[3], s[0]) for s in t.crossings)
    return Tangle(crossings, dict(t.boundary), t.free_loops)


# ---------------------------------------------------------------------------
# insertion into a link crossing

# splice maps: crossing slot -> boundary end, counterclockwise aligned
_SPLICE_POSITIVE = {0: "SW", 1: "SE", 2: "NE", 3: "NW"}
_SPLICE_NEGATIVE = {0: "SE", 1: "NE", 2: "NW", 3: "SW"}


def insert(d: LinkDiagram, c: int, t: Tangle,
           shading: int | None = None) -> tuple[LinkDiagram, tuple[int, ...]]:
    """Replace crossing ``c`` of ``d`` by the tangle ``t``.

    The tangle must be connected, reduced (kink-free) and uniformly signed;
    its sign selects the splice frame, so a positive tangle replaces the
    crossing in the checkerboard frame where the crossing's Tait edge is
    positive, a negative tangle in the other frame.  When ``shading`` is
    given the crossing's Tait sign under that shading must match the
    tangle's sign.  Returns the new diagram and the indices of the image
    crossings of the tangle.
    """
    from .taitgraph import tait_sign

    if not 0 <= c < d.n:
        raise IndexError(f"crossing index {c} out of range")
    if not t.is_connected:
        raise TangleError("cannot insert a disconnected tangle")
    if _find_tangle_kink(t) is not None:
        raise UnreducedTangleError("tangle has an R1 kink; reduce it first")
    sign = tangle_sign(t)
    if sign not in (TangleSign.POSITIVE, TangleSign.NEGATIVE):
        raise TypeMismatchError(f"tangle is {sign.value}; need a uniform sign")
    if shading is not None:
        required = tait_sign(d, c, shading)
        if (required > 0) != (sign is TangleSign.POSITIVE):
            raise TypeMismatchError(
                f"tangle sign {sign.value} does not extend a crossing of Tait "
                f"sign {required:+d} under shading {shading}"
            )
    splice = _SPLICE_POSITIVE if sign is TangleSign.POSITIVE else _SPLICE_NEGATIVE
    shift = max(d.arcs()) + 1 if d.n else 1
    uf = _Joiner()
    cross_slots = d.crossings[c].slots
    for slot_idx in range(4):
        uf.join(cross_slots[slot_idx], t.boundary[splice[slot_idx]] + shift)
    slots_list = [
        tuple(uf.find(a) for a in x.slots)
        for ci, x in enumerate(d.crossings)
        if ci != c
    ]
    for slots in t.crossings:
        slots_list.append(tuple(uf.find(a + shift) for a in slots))
    new = assemble(slots_list, d.free_loops + t.free_loops + uf.loops)
    image = tuple(range(d.n - 1, d.n - 1 + t.n))
    return new, image


# ---------------------------------------------------------------------------
# twist families


def twist_tangle(n: int, direction: str, sign: int = +1) -> Tangle:
    """The n-crossing twist tangles of the closed-form bracket series:
    ``vertical`` has f = A^(n-1), ``horizontal`` has g = A^(-n+1) (for the
    positive family; sign=-1 mirrors them)."""
    if n < 1:
        raise ValueError("twist tangles need n >= 1")
    if direction not in ("vertical", "horizontal"):
        raise ValueError("direction must be 'vertical' or 'horizontal'")
    crossings = []
    if direction == "vertical":
        # crossings chained through the E and W sides; arcs b_i bottom, t_i top
        # X_i = (b_{i-1}, b_i, t_i, t_{i-1}), under-strand SW-NE locally
        b = [100 + i for i in range(n + 1)]
        tt = [200 + i for i in range(n + 1)]
        for i in range(1, n + 1):
            crossings.append((b[i - 1], b[i], tt[i], tt[i - 1]))
        boundary = {"NW": tt[0], "SW": b[0], "NE": tt[n], "SE": b[n]}
    else:
        # chained through the N and S sides; arcs l_i left, r_i right
        # X_i = (l_{i-1}, r_{i-1}, r_i, l_i)
        left = [100 + i for i in range(n + 1)]
        right = [200 + i for i in range(n + 1)]
        for i in range(1, n + 1):
            crossings.append((left[i - 1], right[i - 1], right[i], left[i]))
        boundary = {"SW": left[0], "SE": right[0], "NW": left[n], "NE": right[n]}
    t = Tangle(tuple(crossings), boundary)
    if sign < 0:
        t = mirror_tangle(t)
    t.validate_planar()
    return t


def tangle_key(t: Tangle) -> tuple[str, str]:
    """Dedup key: canonical keys of both closures."""
    return canonical_key(numerator(t)), canonical_key(denominator(t))


def is_twist_tangle(t: Tangle) -> bool:
    """True iff the tangle matches a twist family member of its size."""
    if t.n == 0:
        return False
    key = tangle_key(t)
    for direction in ("vertical", "horizontal"):
        for sign in (+1, -1):
            if key == tangle_key(twist_tangle(t.n, direction, sign)):
                return True
    return False


# ---------------------------------------------------------------------------
# generation


def _chord_moves(t: Tangle):
    """All single-crossing chord insertions across a face of the tangle.

    A chord across a face cuts two of its arc sides and reroutes them
    through a new transversal crossing; counterclockwise around the new
    crossing the slots are (from_p, to_p, from_q, to_q) where from/to are
    the cut halves attached to the walk's source and target ends.  Both
    over/under choices are emitted.
    """
    fresh = t.max_arc() + 1
    for steps, _segments in t.faces:
        arc_steps = [s for s in steps if True]
        for i in range(len(arc_steps)):
            for j in range(i + 1, len(arc_steps)):
                arc_p, src_p, dst_p = arc_steps[i]
                arc_q, src_q, dst_q = arc_steps[j]
                ids = {
                    "from_p": fresh, "to_p": fresh + 1,
                    "from_q": fresh + 2, "to_q": fresh + 3,
                }
                if arc_p == arc_q:
                    # one arc cut twice: the middle piece joins both 'to' halves
                    ids["to_q"] = ids["to_p"]
                    replacements = {
                        (arc_p, src_p): ids["from_p"],
                        (arc_q, src_q): ids["from_q"],
                    }
                else:
                    replacements = {
                        (arc_p, src_p): ids["from_p"],
                        (arc_p, dst_p): ids["to_p"],
                        (arc_q, src_q): ids["from_q"],
                        (arc_q, dst_q): ids["to_q"],
                    }
                new_crossing_base = (ids["from_p"], ids["to_p"], ids["from_q"], ids["to_q"])

                def substituted(end_filter):
                    crossings = []
                    for ci, slots in enumerate(t.crossings):
                        row = []
                        for si, a in enumerate(slots):
                            row.append(end_filter(a, ("C", ci, si)))
                        crossings.append(tuple(row))
                    boundary = {
                        p: end_filter(t.boundary[p], ("B", p)) for p in ENDS
                    }
                    return crossings, boundary

                def apply(a, end, table=replacements):
                    return table.get((a, end), a)

                crossings, boundary = substituted(apply)
                for rot in (0, 1):
                    nc = new_crossing_base if rot == 0 else (
                        new_crossing_base[1], new_crossing_base[2],
                        new_crossing_base[3], new_crossing_base[0],
                    )
                    try:
                        cand = Tangle(tuple(crossings) + (nc,), boundary, t.free_loops)
                        cand.validate_planar()
                    except TangleError:
                        continue
                    yield cand


_GENERATION_CACHE: dict[int, list[Tangle]] = {}
GENERATION_LIMIT = 8


def _all_alternating_tangles(max_crossings: int) -> list[Tangle]:
    """Connected alternating tangles (kinked intermediates included) up to
    the size bound, deduplicated by closure keys; breadth-first growth by
    chord moves from the two single crossings."""
    if max_crossings in _GENERATION_CACHE:
        return _GENERATION_CACHE[max_crossings]
    seeds = [twist_tangle(1, "vertical", +1), twist_tangle(1, "vertical", -1)]
    seen: dict[tuple, Tangle] = {}
    frontier: list[Tangle] = []
    for s in seeds:
        seen[tangle_key(s)] = s
        frontier.append(s)
    result = list(frontier)
    while frontier:
        nxt: list[Tangle] = []
        for t in frontier:
            if t.n >= max_crossings:
                continue
            for cand in _chord_moves(t):
                if not cand.is_connected:
                    continue
                if not _is_alternating_fragment(cand):
                    continue
                key = tangle_key(cand)
                if key in seen:
                    continue
                seen[key] = cand
                nxt.append(cand)
                result.append(cand)
        frontier = nxt
    _GENERATION_CACHE[max_crossings] = result
    return result


def enumerate_alternating_tangles(max_crossings: int, sign: int = +1) -> list[Tangle]:
    """Reduced, connected, alternating tangles of the requested sign, up to
    ``max_crossings`` crossings, deduplicated by the canonical keys of both
    closures.  Deterministic order: by crossing count, then by key."""
    if max_crossings > GENERATION_LIMIT:
        raise ValueError(f"generation bound is {GENERATION_LIMIT} crossings")
    want = TangleSign.POSITIVE if sign > 0 else TangleSign.NEGATIVE
    out = []
    for t in _all_alternating_tangles(max_crossings):
        if _find_tangle_kink(t) is not None:
            continue
        if tangle_sign(t) is not want:
            continue
        out.append(t)
    out.sort(key=lambda t: (t.n, tangle_key(t)))
    return out


# ---------------------------------------------------------------------------
# the section-4 property checks


@dataclass(frozen=True)
class Prop41Report:
    lead_f: int
    trail_f: int
    lead_g: int
    trail_g: int

    @property
    def offsets(self) -> tuple[int, int, int, int]:
        return (self.lead_f, self.trail_f, self.lead_g, self.trail_g)

    @property
    def passed(self) -> bool:
        return all(abs(o) in (2, 6) for o in self.offsets)


def prop41_check(t: Tangle, c: int) -> Prop41Report:
    """Degree offsets between the decompositions of the two smoothings at a
    nontrivial crossing of a non-twist alternating tangle; each must be two
    or six in absolute value."""
    from .diagram import SmoothingKind

    if is_twist_tangle(t):
        raise TangleError("twist tangles are excluded here")
    if tangle_sign(t) in (TangleSign.NON_ALTERNATING,):
        raise TangleError("tangle must be alternating")
    if classify_crossing(t, c) is not CrossingClass.NONTRIVIAL:
        raise TangleError(f"crossing {c} is not a nontrivial crossing")
    t0 = smooth_tangle(t, c, SmoothingKind.ZERO)
    tinf = smooth_tangle(t, c, SmoothingKind.INFINITY)
    p0 = bracket_decompose(t0)
    pinf = bracket_decompose(tinf)
    f1, g1 = p0.F, p0.G
    f2, g2 = pinf.F, pinf.G
    if f1.is_zero() or f2.is_zero() or g1.is_zero() or g2.is_zero():
        raise TangleError("degenerate decomposition; smoothing lost a closure type")
    return Prop41Report(
        lead_f=f1.max_degree() - f2.max_degree(),
        trail_f=f1.min_degree() - f2.min_degree(),
        lead_g=g1.max_degree() - g2.max_degree(),
        trail_g=g1.min_degree() - g2.min_degree(),
    )


@dataclass(frozen=True)
class Lemma43Report:
    alternating_f: bool
    alternating_g: bool
    sign_compatible: bool
    common_term: int | None  # an exponent where both have a nonzero term
    max_gap_f: int
    max_gap_g: int

    @property
    def passed(self) -> bool:
        return (self.alternating_f and self.alternating_g
                and self.sign_compatible and self.common_term is not None
                and self.max_gap_f <= 8 and self.max_gap_g <= 8)


def lemma43_check(t: Tangle) -> Lemma43Report:
    """For a reduced alternating positive tangle with normalized pair (f, g):
    both alternating, at least one power of A carried by both (the sign
    compatibility rules out cancellation there), compatible sign patterns,
    and no gap longer than eight."""
    if _find_tangle_kink(t) is not None:
        raise UnreducedTangleError("tangle must be reduced")
    if tangle_sign(t) is not TangleSign.POSITIVE:
        raise TangleError("tangle must be a reduced alternating positive tangle")
    pair = bracket_decompose(t)
    f, g = pair.f, pair.g
    alt_f = is_alternating_poly(f, 4)
    alt_g = is_alternating_poly(g, 4)
    common = None
    for e in f.support():
        if g.coeff(e) != 0:
            common = e
            break
    sign_ok = False
    if alt_f and alt_g and not f.is_zero() and not g.is_zero():
        e0 = f.min_degree()
        s0 = 1 if f.coeff(e0) > 0 else -1
        if (g.min_degree() - e0) % 4 == 0:
            sign_ok = all(
                (1 if g.coeff(e) > 0 else -1) == s0 * (-1) ** ((e - e0) // 4)
                for e in g.support()
            )
    return Lemma43Report(
        alternating_f=alt_f,
        alternating_g=alt_g,
        sign_compatible=sign_ok,
        common_term=common,
        max_gap_f=max_gap(f, 4),
        max_gap_g=max_gap(g, 4),
    )
