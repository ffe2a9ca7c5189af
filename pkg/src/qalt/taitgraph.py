"""Checkerboard colorings, signed Tait graphs, spanning-tree and
almost-spanning-tree counting, and the two spanning-tree determinants.

Sign convention, tied to the diagram module's slot convention: a crossing's
Tait edge is positive exactly when the shaded faces sit at corners 1 and 3
(between slots 1-2 and 3-0).  Those are the corners merged by the Zero
smoothing, so contracting a positive edge is the Tait move of the Zero
smoothing and deleting it is the Infinity smoothing.  Reduced alternating
diagrams then get single-sign Tait graphs, one sign per shading class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .diagram import LinkDiagram, is_split

__all__ = [
    "TaitEdge",
    "TaitGraph",
    "TreeCounts",
    "checkerboard_classes",
    "build_tait",
    "tait_sign",
    "spanning_tree_sets",
    "spanning_tree_counts",
    "det_from_trees",
    "det_from_laplacian",
    "edge_split_counts",
    "almost_spanning_counts",
    "dump_tait",
    "integer_det",
]


@dataclass(frozen=True)
class TaitEdge:
    u: int
    v: int
    sign: int
    crossing: int


@dataclass(frozen=True)
class TaitGraph:
    vertices: tuple[int, ...]
    edges: tuple[TaitEdge, ...]
    shading: int  # which checkerboard class was shaded (0 or 1)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def contract(self, e: int) -> "TaitGraph":
        """Contract edge ``e`` (by index), merging v into u; loops stay."""
        edge = self.edges[e]
        u, v = edge.u, edge.v
        vertices = tuple(x for x in self.vertices if x != v) if u != v else self.vertices
        edges = tuple(
            TaitEdge(u if te.u == v else te.u, u if te.v == v else te.v,
                     te.sign, te.crossing)
            for i, te in enumerate(self.edges) if i != e
        )
        return TaitGraph(vertices, edges, self.shading)

    def delete(self, e: int) -> "TaitGraph":
        edges = tuple(te for i, te in enumerate(self.edges) if i != e)
        return TaitGraph(self.vertices, edges, self.shading)

    def is_connected(self) -> bool:
        return _connected(self.vertices, [(te.u, te.v) for te in self.edges])


@dataclass(frozen=True)
class TreeCounts:
    """s[v] = number of spanning trees with exactly v positive edges."""

    s: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.s.values())

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** v * c for v, c in self.s.items())


def checkerboard_classes(d: LinkDiagram) -> tuple[frozenset[int], frozenset[int]]:
    """The two face classes of the checkerboard coloring of a connected
    diagram; class 0 contains face 0 (first face in traversal order)."""
    if is_split(d):
        raise ValueError("checkerboard coloring needs a connected diagram")
    if d.n == 0:
        raise ValueError("no faces to color on a crossingless diagram")
    adjacency: dict[int, set[int]] = {fi: set() for fi in range(len(d.faces))}
    # darts of one arc lie on the two faces bordering it
    dart_face = d._face_of_dart
    for a, occs in d._occurrences.items():
        f1 = dart_face[occs[0]]
        f2 = dart_face[occs[1]]
        adjacency[f1].add(f2)
        adjacency[f2].add(f1)
    color = {0: 0}
    todo = [0]
    while todo:
        cur = todo.pop()
        for nxt in adjacency[cur]:
            if nxt not in color:
                color[nxt] = 1 - color[cur]
                todo.append(nxt)
            elif color[nxt] == color[cur]:
                raise ValueError("faces are not 2-colorable; invalid embedding")
    cls0 = frozenset(f for f, c in color.items() if c == 0)
    cls1 = frozenset(f for f, c in color.items() if c == 1)
    return cls0, cls1


def build_tait(d: LinkDiagram, shading: int = 0) -> TaitGraph:
    """Signed Tait graph on the shaded faces: one vertex per shaded face,
    one edge per crossing between its two shaded corners."""
    if shading not in (0, 1):
        raise ValueError("shading must be 0 or 1")
    classes = checkerboard_classes(d)
    shaded = classes[shading]
    edges = []
    for ci in range(d.n):
        corner_faces = [d.face_at_corner(ci, k) for k in range(4)]
        if corner_faces[1] in shaded:
            if corner_faces[3] not in shaded:
                raise ValueError("checkerboard corners disagree at crossing "
                                 f"{ci}; invalid embedding")
            edges.append(TaitEdge(corner_faces[1], corner_faces[3], +1, ci))
        else:
            if corner_faces[0] not in shaded or corner_faces[2] not in shaded:
                raise ValueError("checkerboard corners disagree at crossing "
                                 f"{ci}; invalid embedding")
            edges.append(TaitEdge(corner_faces[0], corner_faces[2], -1, ci))
    return TaitGraph(tuple(sorted(shaded)), tuple(edges), shading)


def tait_sign(d: LinkDiagram, c: int, shading: int = 0) -> int:
    """Sign of crossing ``c``'s Tait edge under the given shading."""
    if not 0 <= c < d.n:
        raise IndexError(f"crossing index {c} out of range")
    shaded = checkerboard_classes(d)[shading]
    return +1 if d.face_at_corner(c, 1) in shaded else -1


# ---------------------------------------------------------------------------
# spanning tree enumeration (deletion-contraction with connectivity pruning)


def _connected(vertices, pairs) -> bool:
    verts = list(vertices)
    if len(verts) <= 1:
        return True
    adj: dict = {v: [] for v in verts}
    for u, v in pairs:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    seen = {verts[0]}
    todo = [verts[0]]
    while todo:
        cur = todo.pop()
        for nxt in adj[cur]:
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return len(seen) == len(verts)


def spanning_tree_sets(g: TaitGraph):
    """Yield every spanning tree as a frozenset of edge indices."""
    verts = list(g.vertices)
    edges = [(te.u, te.v, i) for i, te in enumerate(g.edges) if te.u != te.v]
    yield from _enum_trees(set(verts), edges, [])


def _enum_trees(verts: set, edges: list, chosen: list):
    if len(verts) == 1:
        yield frozenset(chosen)
        return
    if not _connected(verts, [(u, v) for u, v, _ in edges]):
        return
    u, v, idx = edges[0]
    rest = edges[1:]
    # contract: spanning trees through this edge
    merged = [(u if a == v else a, u if b == v else b, i) for a, b, i in rest]
    merged = [(a, b, i) for a, b, i in merged if a != b]
    chosen.append(idx)
    yield from _enum_trees(verts - {v}, merged, chosen)
    chosen.pop()
    # delete: spanning trees avoiding it
    yield from _enum_trees(verts, rest, chosen)


def spanning_tree_counts(g: TaitGraph) -> TreeCounts:
    """Exhaustive spanning-tree census bucketed by positive-edge count."""
    if not g.is_connected():
        raise ValueError("spanning trees of a disconnected graph")
    signs = [te.sign for te in g.edges]
    s: dict[int, int] = {}
    for tree in spanning_tree_sets(g):
        v = sum(1 for i in tree if signs[i] > 0)
        s[v] = s.get(v, 0) + 1
    return TreeCounts(s)


def det_from_trees(g: TaitGraph) -> int:
    return abs(spanning_tree_counts(g).alternating_sum)


def integer_det(m: list[list[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_from_laplacian(g: TaitGraph) -> int:
    """|reduced weighted-Laplacian determinant| with weight -1 on positive
    edges and +1 on negative edges, so the matrix-tree sum is
    sum over trees of (-1)^(positive edges)."""
    verts = list(g.vertices)
    if len(verts) == 1:
        return 1 if g.is_connected() else 1
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    lap = [[0] * n for _ in range(n)]
    for te in g.edges:
        if te.u == te.v:
            continue
        w = -te.sign  # -1 for positive edges, +1 for negative
        i, j = index[te.u], index[te.v]
        lap[i][i] += w
        lap[j][j] += w
        lap[i][j] -= w
        lap[j][i] -= w
    reduced = [row[1:] for row in lap[1:]]
    return abs(integer_det(reduced))


def edge_split_counts(g: TaitGraph, e: int) -> tuple[TreeCounts, TreeCounts]:
    """Split the census at edge ``e``: counts for the contraction (trees
    through e, the Zero side for a positive edge) and for the deletion
    (trees avoiding e, the Infinity side)."""
    if not 0 <= e < len(g.edges):
        raise ValueError(f"edge index {e} out of range")
    edge = g.edges[e]
    with_e: dict[int, int] = {}
    without_e: dict[int, int] = {}
    signs = [te.sign for te in g.edges]
    for tree in spanning_tree_sets(g):
        v = sum(1 for i in tree if signs[i] > 0)
        if e in tree:
            shifted = v - (1 if edge.sign > 0 else 0)
            with_e[shifted] = with_e.get(shifted, 0) + 1
        else:
            without_e[v] = without_e.get(v, 0) + 1
    return TreeCounts(with_e), TreeCounts(without_e)


def almost_spanning_counts(g: TaitGraph, u1: int, u2: int):
    """Count spanning 2-forests separating ``u1`` from ``u2`` (the almost
    spanning trees with respect to u1, u2), plus the per-edge refinement.

    Implemented by appending a zero-weight auxiliary edge u1-u2 and keeping
    the spanning trees that use it.
    """
    if u1 == u2 or u1 not in g.vertices or u2 not in g.vertices:
        raise ValueError(f"need two distinct vertices of the graph, got {u1}, {u2}")
    aux = TaitGraph(g.vertices, g.edges + (TaitEdge(u1, u2, +1, -1),), g.shading)
    aux_index = len(g.edges)
    y = 0
    y_per_edge = {i: 0 for i in range(len(g.edges))}
    for tree in spanning_tree_sets(aux):
        if aux_index not in tree:
            continue
        y += 1
        for i in tree:
            if i != aux_index:
                y_per_edge[i] += 1
    return y, y_per_edge


def dump_tait(g: TaitGraph) -> str:
    """Debug/golden format: vertex count, then ``u v sign crossing`` lines."""
    lines = [str(len(g.vertices))]
    for te in g.edges:
        lines.append(f"{te.u} {te.v} {te.sign:+d} {te.crossing}")
    return "\n".join(lines)
