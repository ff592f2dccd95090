"""Finite posets stored as cover relations, plus distributive-lattice tools."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .core import QPolynomial, check_word


class NotALattice(ValueError):
    pass


class NotGraded(ValueError):
    pass


class InvalidPoset(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """Elements are indices ``0..len-1``; ``covers`` holds pairs (lo, hi)."""

    payloads: tuple
    covers: frozenset
    weights: tuple | None = None
    name: str = ""
    _validated: bool = field(default=False, repr=False)

    def __post_init__(self):
        n = len(self.payloads)
        for lo, hi in self.covers:
            if not (0 <= lo < n and 0 <= hi < n) or lo == hi:
                raise InvalidPoset(f"bad cover ({lo},{hi})")
        if self.weights is not None and len(self.weights) != n:
            raise InvalidPoset("weights must align with payloads")
        if not self._validated:
            self._check_reduced()

    @classmethod
    def from_relations(
        cls,
        payloads: Sequence,
        relations: Iterable[tuple[int, int]],
        weights: Sequence | None = None,
        name: str = "",
    ) -> "FinitePoset":
        """Build from any generating set of strict relations (lo < hi)."""
        n = len(payloads)
        g = nx.DiGraph()
        g.add_nodes_from(range(n))
        g.add_edges_from(relations)
        if not nx.is_directed_acyclic_graph(g):
            raise InvalidPoset("relations contain a cycle")
        red = nx.transitive_reduction(g)
        return cls(tuple(payloads), frozenset(red.edges()),
                   None if weights is None else tuple(weights), name, True)

    def _check_reduced(self) -> None:
        g = self.graph
        if not nx.is_directed_acyclic_graph(g):
            raise InvalidPoset("covers contain a cycle")
        red = nx.transitive_reduction(g)
        if set(red.edges()) != set(self.covers):
            raise InvalidPoset("covers are not a transitive reduction")

    # structure ------------------------------------------------------
    def __len__(self) -> int:
        return len(self.payloads)

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.payloads)))
        g.add_edges_from(self.covers)
        return g

    @cached_property
    def up(self) -> tuple[tuple[int, ...], ...]:
        ups: list[list[int]] = [[] for _ in self.payloads]
        for lo, hi in self.covers:
            ups[lo].append(hi)
        return tuple(tuple(sorted(u)) for u in ups)

    @cached_property
    def down(self) -> tuple[tuple[int, ...], ...]:
        downs: list[list[int]] = [[] for _ in self.payloads]
        for lo, hi in self.covers:
            downs[hi].append(lo)
        return tuple(tuple(sorted(d)) for d in downs)

    @cached_property
    def _below(self) -> tuple[frozenset, ...]:
        order = list(nx.topological_sort(self.graph))
        below: list[set[int]] = [set() for _ in self.payloads]
        for v in order:
            for u in self.down[v]:
                below[v] |= below[u] | {u}
        return tuple(frozenset(b) for b in below)

    def leq(self, x: int, y: int) -> bool:
        return x == y or x in self._below[y]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.up[i]]

    def index_of(self, payload) -> int:
        return self._payload_index[payload]

    @cached_property
    def _payload_index(self) -> dict:
        idx = {}
        for i, p in enumerate(self.payloads):
            if p in idx:
                raise InvalidPoset(f"duplicate payload {p!r}")
            idx[p] = i
        return idx

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        """Rank function; raises NotGraded if none exists."""
        rank: dict[int, int] = {}
        for v in nx.topological_sort(self.graph):
            ds = self.down[v]
            if not ds:
                rank[v] = 0
                continue
            values = {rank[u] + 1 for u in ds}
            if len(values) != 1:
                raise NotGraded(f"element {v} has lower covers at different ranks")
            rank[v] = values.pop()
        tops = {rank[v] for v in self.maximal()}
        if len(tops) > 1:
            raise NotGraded("maximal elements sit at different ranks")
        return tuple(rank[i] for i in range(len(self)))

    def is_graded(self) -> bool:
        try:
            self.ranks
        except NotGraded:
            return False
        return True

    def induced(self, keep: Iterable[int]) -> "FinitePoset":
        keep = sorted(set(keep))
        pos = {v: i for i, v in enumerate(keep)}
        rel = [(pos[x], pos[y]) for x in keep for y in keep if x != y and self.leq(x, y)]
        w = None if self.weights is None else [self.weights[v] for v in keep]
        return FinitePoset.from_relations([self.payloads[v] for v in keep], rel, w)

    # export ---------------------------------------------------------
    def to_json(self) -> dict:
        try:
            ranks = self.ranks
        except NotGraded:
            ranks = None
        elements = []
        for i, p in enumerate(self.payloads):
            wt = None
            if self.weights is not None:
                w = self.weights[i]
                wt = w.to_json() if hasattr(w, "to_json") else w
            elements.append({
                "id": i,
                "payload": _jsonable(p),
                "weight": wt,
                "rank": None if ranks is None else ranks[i],
            })
        return {"elements": elements, "covers": sorted([list(c) for c in self.covers])}

    def to_dot(self, name: str | None = None) -> str:
        lines = [f"digraph {json.dumps(name or self.name or 'poset')} {{", "  rankdir=BT;"]
        for i, p in enumerate(self.payloads):
            label = json.dumps(_label(p))
            extra = ""
            if self.weights is not None:
                extra = f", tooltip={json.dumps(str(self.weights[i]))}"
            lines.append(f"  n{i} [label={label}{extra}];")
        for lo, hi in sorted(self.covers):
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _jsonable(p):
    if isinstance(p, (tuple, list, frozenset, set)):
        items = [_jsonable(x) for x in p]
        if isinstance(p, (frozenset, set)):
            items = sorted(items, key=lambda v: json.dumps(v, sort_keys=True))
        return items
    if isinstance(p, dict):
        return {str(k): _jsonable(v) for k, v in sorted(p.items(), key=lambda kv: str(kv[0]))}
    if isinstance(p, (int, str, float, bool)) or p is None:
        return p
    if hasattr(p, "to_json"):
        return p.to_json()
    return str(p)


def _label(p) -> str:
    return json.dumps(_jsonable(p), separators=(",", ":"))


# ---------------------------------------------------------------- builders

def order_ideals(C: FinitePoset) -> FinitePoset:
    """Lattice of order ideals ordered by inclusion; payload = sorted member payloads."""
    n = len(C)
    ideals: list[frozenset] = [frozenset()]
    index = {frozenset(): 0}
    covers = []
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for ideal in frontier:
            for v in range(n):
                if v in ideal or any(u not in ideal for u in C.down[v]):
                    continue
                bigger = ideal | {v}
                if bigger not in index:
                    index[bigger] = len(ideals)
                    ideals.append(bigger)
                    nxt.append(bigger)
                covers.append((index[ideal], index[bigger]))
        frontier = nxt
    payloads = tuple(_ideal_payload(C, I) for I in ideals)
    return FinitePoset(payloads, frozenset(covers), None, f"I({C.name})", True)


def _ideal_payload(C: FinitePoset, ideal: frozenset) -> tuple:
    return tuple(sorted((C.payloads[v] for v in ideal), key=lambda p: (str(type(p)), p)))


def join_irreducibles(D: FinitePoset) -> FinitePoset:
    """Elements with exactly one lower cover, with the induced order."""
    check_lattice(D)
    return D.induced(v for v in range(len(D)) if len(D.down[v]) == 1)


def _meet_join_tables(D: FinitePoset):
    n = len(D)
    upsets = [frozenset(y for y in range(n) if D.leq(x, y)) for x in range(n)]
    downsets = [frozenset(y for y in range(n) if D.leq(y, x)) for x in range(n)]
    return upsets, downsets


def check_lattice(D: FinitePoset) -> None:
    n = len(D)
    if n == 0:
        raise NotALattice("empty poset")
    ups, downs = _meet_join_tables(D)
    for x in range(n):
        for y in range(x + 1, n):
            common_up = ups[x] & ups[y]
            joins = [z for z in common_up if all(D.leq(z, t) for t in common_up)]
            if len(joins) != 1:
                raise NotALattice(f"no join for elements {x} and {y}")
            common_down = downs[x] & downs[y]
            meets = [z for z in common_down if all(D.leq(t, z) for t in common_down)]
            if len(meets) != 1:
                raise NotALattice(f"no meet for elements {x} and {y}")


def is_distributive(D: FinitePoset) -> bool:
    check_lattice(D)
    return poset_isomorphic(D, order_ideals(join_irreducibles(D)))


def chain(m: int) -> FinitePoset:
    return FinitePoset(tuple(range(m)), frozenset((i, i + 1) for i in range(m - 1)), None, f"chain({m})", True)


def fence(w: str) -> FinitePoset:
    """The poset C_w on 1..n: letter a at i gives i+1 < i, letter b gives i < i+1."""
    check_word(w)
    covers = []
    for i, c in enumerate(w, start=1):
        covers.append((i, i - 1) if c == "a" else (i - 1, i))
    return FinitePoset(tuple(range(1, len(w) + 2)), frozenset(covers), None, f"C_{w or 'empty'}", True)


def boolean(u: int) -> FinitePoset:
    subsets = [frozenset(s for s in range(u) if mask >> s & 1) for mask in range(1 << u)]
    index = {s: i for i, s in enumerate(subsets)}
    covers = [(index[s], index[s | {e}]) for s in subsets for e in range(u) if e not in s]
    payloads = tuple(tuple(sorted(s)) for s in subsets)
    return FinitePoset(payloads, frozenset(covers), None, f"B{u}", True)


def antichain(m: int) -> FinitePoset:
    return FinitePoset(tuple(range(m)), frozenset(), None, f"antichain({m})", True)


def fibonacci_cube(n: int) -> FinitePoset:
    """Order ideals of the n-element fence whose first element is a local max."""
    if n == 0:
        return order_ideals(antichain(0))
    w = "".join("a" if i % 2 == 0 else "b" for i in range(n - 1))
    return order_ideals(fence(w))


def product_poset(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    pairs = list(product(range(len(P)), range(len(Q))))
    index = {pq: i for i, pq in enumerate(pairs)}
    covers = []
    for (p, q) in pairs:
        for p2 in P.up[p]:
            covers.append((index[(p, q)], index[(p2, q)]))
        for q2 in Q.up[q]:
            covers.append((index[(p, q)], index[(p, q2)]))
    payloads = tuple((P.payloads[p], Q.payloads[q]) for p, q in pairs)
    return FinitePoset(payloads, frozenset(covers), None, f"{P.name}x{Q.name}", True)


def grid_lattice(m: int, n: int) -> FinitePoset:
    """Young diagrams inside an m x n box, i.e. ideals of chain(m) x chain(n)."""
    return order_ideals(product_poset(chain(m), chain(n)))


def diamond_m3() -> FinitePoset:
    return FinitePoset(("0", "a", "b", "c", "1"),
                       frozenset({(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)}), None, "M3", True)


# ---------------------------------------------------------------- invariants

def rank_generating_function(P: FinitePoset) -> QPolynomial:
    ranks = P.ranks
    coeffs = [0] * (max(ranks, default=-1) + 1)
    for r in ranks:
        coeffs[r] += 1
    return QPolynomial(tuple(coeffs))


def _iso_graph(P: FinitePoset) -> nx.DiGraph:
    g = nx.DiGraph()
    try:
        ranks = P.ranks
    except NotGraded:
        ranks = (0,) * len(P)
    for i in range(len(P)):
        g.add_node(i, rank=ranks[i], sig=(len(P.down[i]), len(P.up[i])))
    g.add_edges_from(P.covers)
    return g


def poset_isomorphic(P: FinitePoset, Q: FinitePoset, witness: bool = False):
    """Cover-graph isomorphism, pruned by rank and up/down degree."""
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return (False, None) if witness else False
    gp, gq = _iso_graph(P), _iso_graph(Q)
    matcher = DiGraphMatcher(gp, gq, node_match=lambda a, b: a["rank"] == b["rank"] and a["sig"] == b["sig"])
    found = matcher.is_isomorphic()
    if witness:
        return found, (dict(matcher.mapping) if found else None)
    return found


def order_dual(P: FinitePoset) -> FinitePoset:
    w = P.weights
    return FinitePoset(P.payloads, frozenset((hi, lo) for lo, hi in P.covers), w, f"{P.name}^op", True)


def check_payload_iso(P: FinitePoset, Q: FinitePoset, fn: Callable[[Hashable], Hashable]) -> dict[int, int]:
    """Check that a payload map is a bijection P -> Q preserving covers.

    Returns the index map; raises ValueError describing the first failure.
    """
    mapping: dict[int, int] = {}
    for i, p in enumerate(P.payloads):
        image = fn(p)
        try:
            mapping[i] = Q.index_of(image)
        except KeyError:
            raise ValueError(f"image of {p!r} is {image!r}, which is not an element of the target") from None
    if len(set(mapping.values())) != len(Q) or len(P) != len(Q):
        raise ValueError("payload map is not a bijection")
    image_covers = {(mapping[lo], mapping[hi]) for lo, hi in P.covers}
    if image_covers != set(Q.covers):
        raise ValueError("payload map does not preserve covering relations")
    return mapping


def payload_value(p: Any):
    return _jsonable(p)
