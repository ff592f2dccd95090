"""Labeled triangulated polygons built from words, and skein-style resolutions.

Vertices of the (n+3)-gon are numbered counterclockwise starting at ``a``,
the endpoint of the arc that sits in the first triangle.  The arc runs from
``a`` to ``b`` and crosses the diagonals labeled 1..n in order.  The top
chain (vertices after ``b``) lies to the left of the arc, so each diagonal
has a left endpoint on the top chain and a right endpoint on the bottom chain.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .core import check_word, dual_word
from .laurent import Laurent


class InvalidCrossing(ValueError):
    pass


class InvalidTriangulation(ValueError):
    pass


def word_label_triples(w: str) -> list[tuple[int, int, int]]:
    """Clockwise edge-label triples of the triangles Δ0..Δn of Σ_w."""
    check_word(w)
    n = len(w) + 1
    triples = [(2 * n + 1, 1, 2 * n)]
    for i, c in enumerate(w, start=1):
        if c == "b":
            triples.append((i + 1, n + i, i))
        else:
            triples.append((n + i, i + 1, i))
    triples.append(_last_triangle_labels(w))
    return triples


def _last_triangle_labels(w: str) -> tuple[int, int, int]:
    n = len(w) + 1
    swap = len(w) % 2 == 0 and len(w) >= 2 and w[-1] != w[-2]
    top, bottom = (2 * n + 3, 2 * n + 2) if swap else (2 * n + 2, 2 * n + 3)
    # clockwise: top-chain side, bottom-chain side, last diagonal
    return (top, bottom, n)


@dataclass(frozen=True, eq=False)
class LabeledTriangulation:
    """A triangulated polygon whose triangles form a strip Δ0, ..., Δn.

    ``triangles[i]`` is a counterclockwise vertex triple and
    ``edge_labels`` maps each side/diagonal (as a sorted vertex pair) to its
    label.  Diagonal ``i`` separates ``triangles[i-1]`` from ``triangles[i]``.
    """

    size: int
    triangles: tuple[tuple[int, int, int], ...]
    edge_labels: dict
    a: int
    b: int
    word: str | None = None

    @property
    def n(self) -> int:
        return self.size - 3

    @cached_property
    def label_edges(self) -> dict[int, tuple[int, int]]:
        return {lab: e for e, lab in self.edge_labels.items()}

    def label(self, u: int, v: int) -> int:
        try:
            return self.edge_labels[(min(u, v), max(u, v))]
        except KeyError:
            raise InvalidTriangulation(f"({u},{v}) is not an edge of the triangulation") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_labels

    def is_boundary_label(self, lab: int) -> bool:
        return lab > self.n

    def is_boundary(self, u: int, v: int) -> bool:
        return (u - v) % self.size in (1, self.size - 1)

    def diagonal(self, i: int) -> tuple[int, int]:
        """(left, right) endpoints of diagonal i."""
        u, v = self.label_edges[i]
        return (u, v) if self._on_top(u) else (v, u)

    def _on_top(self, v: int) -> bool:
        return v > self.b

    def left(self, i: int) -> int:
        return self.diagonal(i)[0]

    def right(self, i: int) -> int:
        return self.diagonal(i)[1]

    def triangle_labels(self, i: int) -> tuple[int, int, int]:
        """Clockwise label triple of triangle i."""
        p, q, r = self.triangles[i]
        # counterclockwise p,q,r -> clockwise p,r,q
        return (self.label(p, r), self.label(r, q), self.label(q, p))

    def opposite_vertex(self, i: int, lab: int) -> int:
        """Vertex of triangle i opposite the edge labeled ``lab``."""
        tri = self.triangles[i]
        u, v = self.label_edges[lab]
        rest = [x for x in tri if x not in (u, v)]
        if len(rest) != 1 or u not in tri or v not in tri:
            raise InvalidTriangulation(f"edge {lab} is not a side of triangle {i}")
        return rest[0]

    def opposite_label(self, i: int, vertex: int) -> int:
        tri = self.triangles[i]
        u, v = [x for x in tri if x != vertex]
        return self.label(u, v)

    def triangle_edges(self, i: int) -> list[int]:
        p, q, r = self.triangles[i]
        return [self.label(p, q), self.label(q, r), self.label(p, r)]

    def diagonals(self) -> list[int]:
        return list(range(1, self.n + 1))

    def edges_at(self, v: int) -> list[int]:
        return sorted(lab for (p, q), lab in self.edge_labels.items() if v in (p, q))

    def triangles_at(self, v: int) -> list[int]:
        return [i for i, t in enumerate(self.triangles) if v in t]

    def variable(self, lab: int) -> Laurent:
        return Laurent.var(f"x{lab}")

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "a": self.a,
            "b": self.b,
            "triangles": [
                {"verts": list(t), "edge_labels": list(self.triangle_labels(i))}
                for i, t in enumerate(self.triangles)
            ],
            "diagonals": [list(self.diagonal(i)) for i in self.diagonals()],
            "boundary": [
                {"edge": list(self.label_edges[lab]), "label": lab}
                for lab in range(self.n + 1, 2 * self.n + 4)
            ],
        }


def glue_triangles(triples: Sequence[tuple[int, int, int]], word: str | None = None) -> LabeledTriangulation:
    """Glue clockwise label triples along the shared diagonals 1..n.

    Triangle 0 must contain label 1, triangle i (0<i<n) the labels i and
    i+1, and triangle n the label n.
    """
    n = len(triples) - 1
    if n < 1:
        raise InvalidTriangulation("need at least two triangles")
    # symbolic vertices 0,1,2,... ; each triangle as clockwise vertex triple
    # (A,B,C) with edges A-B, B-C, C-A labeled by the triple in order
    edges: dict[int, tuple[int, int]] = {}  # label -> directed (clockwise in the owning triangle)
    tris_cw: list[tuple[int, int, int]] = []
    first = triples[0]
    tris_cw.append((0, 1, 2))
    next_vertex = 3
    for k, lab in enumerate(first):
        edges[lab] = ((0, 1, 2)[k], (0, 1, 2)[(k + 1) % 3])
    for i in range(1, n + 1):
        t = list(triples[i])
        if i not in t:
            raise InvalidTriangulation(f"triangle {i} does not contain diagonal {i}")
        p, q = edges[i]  # clockwise in the previous triangle
        k = t.index(i)
        # in this triangle the shared edge is traversed q -> p
        verts = [None, None, None]
        verts[k] = q
        verts[(k + 1) % 3] = p
        verts[(k + 2) % 3] = next_vertex
        next_vertex += 1
        tris_cw.append(tuple(verts))
        for j, lab in enumerate(t):
            if lab == i:
                continue
            if lab in edges:
                raise InvalidTriangulation(f"label {lab} used twice")
            edges[lab] = (verts[j], verts[(j + 1) % 3])
    total = 2 * n + 3
    if sorted(edges) != list(range(1, total + 1)):
        raise InvalidTriangulation(f"labels must be exactly 1..{total}")
    # walk the boundary counterclockwise from a, leaving along label 2n
    a_sym = [v for v in tris_cw[0] if v not in edges[1]][0]
    boundary_adj: dict[int, list[tuple[int, int]]] = {}
    for lab in range(n + 1, total + 1):
        u, v = edges[lab]
        boundary_adj.setdefault(u, []).append((v, lab))
        boundary_adj.setdefault(v, []).append((u, lab))
    start_lab = triples[0][2]  # edge C-A of the first triangle
    order = [a_sym]
    u, v = edges[start_lab]
    cur = v if u == a_sym else u
    prev_lab = start_lab
    while cur != a_sym:
        order.append(cur)
        nbrs = [x for x in boundary_adj[cur] if x[1] != prev_lab]
        cur, prev_lab = nbrs[0]
    if len(order) != n + 3:
        raise InvalidTriangulation("boundary is not a single cycle")
    number = {sym: i for i, sym in enumerate(order)}
    edge_labels = {}
    for lab, (u, v) in edges.items():
        p, q = number[u], number[v]
        edge_labels[(min(p, q), max(p, q))] = lab
    triangles = []
    for tri in tris_cw:
        p, q, r = (number[x] for x in tri)
        ccw = (p, r, q)
        k = ccw.index(min(ccw))
        triangles.append(ccw[k:] + ccw[:k])
    b_sym = [v for v in tris_cw[n] if v not in edges[n]][0]
    out = LabeledTriangulation(n + 3, tuple(triangles), edge_labels, number[a_sym], number[b_sym], word)
    _validate(out)
    return out


def _validate(T: LabeledTriangulation) -> None:
    for i, (p, q, r) in enumerate(T.triangles):
        if not (_ccw(p, q, r)):
            raise InvalidTriangulation(f"triangle {i} is not counterclockwise: {(p, q, r)}")
    for i in range(1, T.n + 1):
        shared = set(T.triangle_edges(i - 1)) & set(T.triangle_edges(i))
        if shared != {i}:
            raise InvalidTriangulation(f"triangles {i-1},{i} share {shared}, expected {{{i}}}")
    for lab in range(T.n + 1, 2 * T.n + 4):
        if not T.is_boundary(*T.label_edges[lab]):
            raise InvalidTriangulation(f"label {lab} should be a boundary segment")


def _ccw(p: int, q: int, r: int) -> bool:
    return (p < q < r) or (q < r < p) or (r < p < q)


def triangulation_from_word(w: str) -> LabeledTriangulation:
    return glue_triangles(word_label_triples(w), word=w)


def dual_triangulation(T: LabeledTriangulation) -> LabeledTriangulation:
    """Reverse the orientation of every odd-indexed triangle and reglue."""
    triples = []
    for i in range(T.n + 1):
        t = T.triangle_labels(i)
        triples.append(tuple(reversed(t)) if i % 2 == 1 else t)
    word = dual_word(T.word) if T.word is not None else None
    return glue_triangles(triples, word=word)


def crossing_diagonals(T: LabeledTriangulation, u: int, v: int) -> list[int]:
    return [lab for (p, q), lab in T.edge_labels.items() if lab <= T.n and chords_cross(T.size, u, v, p, q)]


def chords_cross(size: int, i: int, j: int, k: int, l: int) -> bool:
    if len({i, j, k, l}) < 4:
        return False
    lo, hi = min(i, j), max(i, j)
    return (lo < k < hi) != (lo < l < hi)


def is_fan(T: LabeledTriangulation) -> bool:
    """Some vertex is an endpoint of every diagonal."""
    if T.n == 0:
        return True
    common = set(T.label_edges[1])
    for i in range(2, T.n + 1):
        common &= set(T.label_edges[i])
    return bool(common)


def is_zigzag(T: LabeledTriangulation) -> bool:
    """No three diagonals share an endpoint."""
    counts = Counter(v for i in range(1, T.n + 1) for v in T.label_edges[i])
    return all(c < 3 for c in counts.values())


# ---------------------------------------------------------------- curves

Curve = tuple  # (start, crossings tuple, end)


@dataclass(frozen=True)
class CurveDiagram:
    """Open curves (start, crossed diagonal labels, end) plus closed loops."""

    curves: tuple[Curve, ...]
    loops: int = 0

    @staticmethod
    def make(curves: Iterable[Curve], loops: int = 0) -> "CurveDiagram":
        kept = []
        for s, cr, e in curves:
            cr = tuple(cr)
            if not cr and s == e:
                loops += 1
            else:
                kept.append((s, cr, e))
        return CurveDiagram(tuple(sorted(kept)), loops)

    def is_resolved(self) -> bool:
        return all(not cr for _, cr, _ in self.curves)

    def pending(self) -> list[int]:
        return sorted(lab for _, cr, _ in self.curves for lab in cr)

    def locate(self, lab: int) -> tuple[int, int]:
        for ci, (_, cr, _) in enumerate(self.curves):
            if lab in cr:
                return ci, cr.index(lab)
        raise InvalidCrossing(f"no curve crosses diagonal {lab}")

    def edge_labels(self, T: LabeledTriangulation) -> list[int]:
        if not self.is_resolved():
            raise InvalidCrossing("diagram still has crossings")
        labels = []
        for s, _, e in self.curves:
            if s == e:
                continue
            if not T.has_edge(s, e):
                raise InvalidTriangulation(f"resolved curve ({s},{e}) is not an edge of the triangulation")
            labels.append(T.label(s, e))
        return sorted(labels)

    def weight(self, T: LabeledTriangulation) -> Laurent:
        labels = self.edge_labels(T)
        if self.loops or any(s == e for s, _, e in self.curves):
            return Laurent()
        return Laurent.product_of(f"x{lab}" for lab in labels)

    def to_json(self) -> dict:
        return {"curves": [[s, list(cr), e] for s, cr, e in self.curves], "loops": self.loops}


def arc_diagram(T: LabeledTriangulation) -> CurveDiagram:
    return CurveDiagram.make([(T.a, tuple(range(1, T.n + 1)), T.b)])


def _split(d: CurveDiagram, crossing: tuple[int, int], T: LabeledTriangulation, ends: list[tuple[int, int]]):
    ci, pos = crossing
    if not 0 <= ci < len(d.curves):
        raise InvalidCrossing(f"no curve {ci}")
    s, cr, e = d.curves[ci]
    if not 0 <= pos < len(cr):
        raise InvalidCrossing(f"curve {ci} has no crossing {pos}")
    lab = cr[pos]
    if not 1 <= lab <= T.n:
        raise InvalidCrossing(f"{lab} is not a diagonal")
    others = [c for k, c in enumerate(d.curves) if k != ci]
    out = []
    for x, y in ends:
        pieces = [(s, cr[:pos], x), (y, cr[pos + 1:], e)]
        out.append(CurveDiagram.make(others + pieces, d.loops))
    return tuple(out)


def resolve(d: CurveDiagram, crossing: tuple[int, int], T: LabeledTriangulation) -> tuple[CurveDiagram, CurveDiagram]:
    """Smooth one crossing: the prefix piece ends at one endpoint of the
    diagonal and the suffix piece starts at the other."""
    lab = _crossing_label(d, crossing)
    l, r = T.diagonal(lab)
    return _split(d, crossing, T, [(l, r), (r, l)])


def slide(d: CurveDiagram, crossing: tuple[int, int], T: LabeledTriangulation) -> tuple[CurveDiagram, CurveDiagram]:
    """Slide a crossing onto one endpoint of its diagonal; both pieces meet there."""
    lab = _crossing_label(d, crossing)
    l, r = T.diagonal(lab)
    return _split(d, crossing, T, [(l, l), (r, r)])


def _crossing_label(d: CurveDiagram, crossing: tuple[int, int]) -> int:
    ci, pos = crossing
    try:
        return d.curves[ci][1][pos]
    except (IndexError, TypeError):
        raise InvalidCrossing(f"crossing {crossing} does not exist") from None


@dataclass
class TreeNode:
    diagram: CurveDiagram
    children: list["TreeNode"] = field(default_factory=list)
    resolved_at: int | None = None
    weight: Laurent | None = None

    def leaves(self) -> list["TreeNode"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def canonical(self) -> str:
        """Unordered shape with leaf weights, for isomorphism checks."""
        if not self.children:
            return f"<{self.weight}>"
        kids = sorted(c.canonical() for c in self.children)
        return "(" + ",".join(kids) + ")"

    def to_json(self) -> dict:
        out = {"diagram": self.diagram.to_json()}
        if self.children:
            out["at"] = self.resolved_at
            out["children"] = [c.to_json() for c in self.children]
        else:
            out["weight"] = str(self.weight)
        return out


def _build_tree(T: LabeledTriangulation, order: Sequence[int], step, halt_on_loop: bool) -> TreeNode:
    if sorted(order) != list(range(1, T.n + 1)):
        raise InvalidCrossing(f"order must be a permutation of 1..{T.n}")

    def grow(d: CurveDiagram, k: int) -> TreeNode:
        if k == len(order) or (halt_on_loop and d.loops):
            node = TreeNode(d)
            node.weight = d.weight(T) if d.is_resolved() else Laurent()
            return node
        lab = order[k]
        kids = step(d, d.locate(lab), T)
        return TreeNode(d, [grow(c, k + 1) for c in kids], lab)

    return grow(arc_diagram(T), 0)


def resolution_tree(w_or_T, order: Sequence[int] | None = None) -> TreeNode:
    T = _as_triangulation(w_or_T)
    order = list(order) if order is not None else list(range(1, T.n + 1))
    return _build_tree(T, order, resolve, halt_on_loop=False)


def dual_resolution_tree(w_or_T, order: Sequence[int] | None = None, halt_on_loop: bool = False) -> TreeNode:
    T = _as_triangulation(w_or_T)
    order = list(order) if order is not None else list(range(1, T.n + 1))
    return _build_tree(T, order, slide, halt_on_loop=halt_on_loop)


def _all_leaves(T: LabeledTriangulation, step) -> list[CurveDiagram]:
    level = [arc_diagram(T)]
    for lab in range(1, T.n + 1):
        level = [c for d in level for c in step(d, d.locate(lab), T)]
    return level


def enumerate_resolutions(w_or_T) -> list[tuple[CurveDiagram, Laurent]]:
    """All 2^n resolutions with their weights (zero-weight leaves included)."""
    T = _as_triangulation(w_or_T)
    return [(d, d.weight(T)) for d in _all_leaves(T, resolve)]


def enumerate_dual_resolutions(w_or_T) -> list[tuple[CurveDiagram, Laurent]]:
    T = _as_triangulation(w_or_T)
    return [(d, d.weight(T)) for d in _all_leaves(T, slide)]


def resolution_sum(w_or_T, dual: bool = False) -> Laurent:
    """(1/x1...xn) times the total weight of all (dual) resolutions."""
    T = _as_triangulation(w_or_T)
    leaves = enumerate_dual_resolutions(T) if dual else enumerate_resolutions(T)
    total = Laurent()
    for _, wt in leaves:
        total = total + wt
    return total * Laurent.monomial([(f"x{i}", -1) for i in range(1, T.n + 1)])


def _as_triangulation(w_or_T) -> LabeledTriangulation:
    if isinstance(w_or_T, LabeledTriangulation):
        return w_or_T
    return triangulation_from_word(w_or_T)


