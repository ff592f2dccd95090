"""Rank polynomials of lattice-path posets on snake graphs.

Three independent routes to the same polynomial (a vertex recursion, the
hook-symbol sum over a Boolean lattice, and a sum over lattice paths of a
small zigzag graph), plus q-deformed rationals and coefficient-shape
predicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import ONE, ZERO, QPolynomial, check_word, cf_value, q_number
from .poset import rank_generating_function
from .snakegraph import (
    SnakeGraph,
    cf_from_snake,
    lattice_path_poset,
    lattice_paths,
    run_lengths,
    straight_segments,
)


def _shape(G: SnakeGraph | str) -> str:
    return G.shape if isinstance(G, SnakeGraph) else check_word(G)


def q_power(e: int) -> QPolynomial:
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return QPolynomial.monomial(e)


# ---------------------------------------------------------------- recursion

def vertex_weights(G: SnakeGraph | str) -> dict:
    """ρ on every vertex: the rank polynomial of paths from (0, 0) to it.

    An east step through column x at height y passes above every tile of
    that column lying below y, and each such tile adds one to the rank.
    Along a straight segment this reduces to ρ(x,1) = ρ(x,0) + qρ(x-1,1)
    horizontally and ρ(x,y) = ρ(x,y-1) + q^h ρ(x-1,y) vertically, with h the
    number of tiles of the column below height y.
    """
    G = G if isinstance(G, SnakeGraph) else SnakeGraph.from_shape(G)
    edges = G.edge_set
    below: dict[int, list[int]] = {}
    for x, y in G.tiles:
        below.setdefault(x, []).append(y)
    rho: dict = {(0, 0): ONE}
    for p in sorted(G.vertices, key=lambda v: (v[0] + v[1], v[0])):
        if p == (0, 0):
            continue
        x, y = p
        total = ZERO
        left = (x - 1, y)
        if (left, p) in edges and left in rho:
            h = sum(1 for ty in below.get(x - 1, []) if ty < y)
            total = total + rho[left].shift(h)
        down = (x, y - 1)
        if (down, p) in edges and down in rho:
            total = total + rho[down]
        if not total.is_zero():
            rho[p] = total
    return rho


def rank_recursive(G: SnakeGraph | str) -> QPolynomial:
    G = G if isinstance(G, SnakeGraph) else SnakeGraph.from_shape(G)
    return vertex_weights(G)[G.end()]


def rank_enumerated(G: SnakeGraph | str) -> QPolynomial:
    G = G if isinstance(G, SnakeGraph) else SnakeGraph.from_shape(G)
    return rank_generating_function(lattice_path_poset(G))


# ---------------------------------------------------------------- hook symbols

@dataclass(frozen=True)
class HookSymbol:
    """One factor of a hook product.

    kind "pair" is H_{i,i+1} = 1 + q[k_i][k_{i+1}], "single" is H_i = [k_i],
    and "sup" is H^{i,i+1}, a power of q.
    """

    kind: str
    i: int

    def text(self) -> str:
        if self.kind == "single":
            return f"H{self.i}"
        if self.kind == "pair":
            return f"H{self.i}{self.i + 1}"
        return f"H^{self.i}{self.i + 1}"

    def sup_exponent(self, ks: list[int]) -> int:
        # one q less for each end of the graph the pair touches
        d = len(ks)
        return ks[self.i - 1] + ks[self.i] + 1 - (self.i == 1) - (self.i + 1 == d)

    def value(self, ks: list[int]) -> QPolynomial:
        if self.kind == "single":
            return q_number(ks[self.i - 1])
        if self.kind == "pair":
            return ONE + (q_number(ks[self.i - 1]) * q_number(ks[self.i])).shift(1)
        return q_power(self.sup_exponent(ks))


def hook_terms(d: int, starts_right: bool = True) -> list[tuple[HookSymbol, ...]]:
    """Symbol products H_σ for σ in the Boolean lattice B_u.

    The minimal product groups indices 1..d into pairs (12)(34)... when the
    graph starts right, or (1)(23)(45)... when it starts up; a trailing index
    stays single.  Bit t of σ replaces the two indices straddling an exposed
    north-west corner by a superscript symbol, and any partner left alone
    becomes a single.
    """
    if d < 1:
        raise ValueError("need at least one segment")
    offset = 0 if starts_right else 1
    groups: list[tuple[int, ...]] = []
    idx = 1
    if offset:
        groups.append((1,))
        idx = 2
    while idx <= d:
        groups.append((idx, idx + 1) if idx + 1 <= d else (idx,))
        idx += 2
    sups = [s for s in range(2 - offset, d, 2)]  # superscript H^{s,s+1}
    terms = []
    for bits in product((0, 1), repeat=len(sups)):
        used = set()
        chosen = [s for s, b in zip(sups, bits) if b]
        for s in chosen:
            used.update((s, s + 1))
        syms: list[HookSymbol] = []
        for g in groups:
            rest = [i for i in g if i not in used]
            if len(rest) == 2:
                syms.append(HookSymbol("pair", rest[0]))
            elif len(rest) == 1:
                syms.append(HookSymbol("single", rest[0]))
        syms.extend(HookSymbol("sup", s) for s in chosen)
        syms.sort(key=lambda h: h.i)
        terms.append(tuple(syms))
    return terms


def hook_product_value(syms: tuple[HookSymbol, ...], ks: list[int]) -> QPolynomial:
    """Multiply symbols; neighbouring superscripts H^{i,i+1} ∘ H^{i+2,i+3} lose one q."""
    total = ONE
    sups = sorted(h.i for h in syms if h.kind == "sup")
    correction = sum(1 for a, b in zip(sups, sups[1:]) if b == a + 2)
    exponent = -correction
    for h in syms:
        if h.kind == "sup":
            exponent += h.sup_exponent(ks)
        else:
            total = total * h.value(ks)
    return total.shift(exponent)


def rank_hook(G: SnakeGraph | str) -> QPolynomial:
    shape = _shape(G)
    ks = straight_segments(shape)
    if len(ks) == 1:
        return q_number(len(shape) + 2)
    terms = hook_terms(len(ks), starts_right=shape[0] == "a")
    total = ZERO
    for syms in terms:
        total = total + hook_product_value(syms, ks)
    return total


def hook_expansion_text(G: SnakeGraph | str) -> str:
    shape = _shape(G)
    d = len(straight_segments(shape))
    if d == 1:
        return f"[{len(shape) + 2}]"
    return " + ".join("".join(h.text() for h in t) for t in hook_terms(d, shape[0] == "a"))


# ---------------------------------------------------------------- corner decomposition

def corner_graph(G: SnakeGraph | str) -> SnakeGraph:
    """The zigzag graph on the d-1 corner tiles; tile j+1 sits in the direction of segment j+1."""
    shape = _shape(G)
    runs = run_lengths(shape)
    letters = []
    pos = 0
    for r in runs:
        letters.append(shape[pos])
        pos += r
    return SnakeGraph.from_shape("".join(letters[1:-1]) if len(letters) > 1 else "")


def _corner_states(H: SnakeGraph, steps: str) -> list[str]:
    """Whether the path passes the NW or SE corner of each tile of H."""
    pts = {(0, 0)}
    p = (0, 0)
    for s in steps:
        p = (p[0] + 1, p[1]) if s == "E" else (p[0], p[1] + 1)
        pts.add(p)
    out = []
    for x, y in H.tiles:
        out.append("NW" if (x, y + 1) in pts else "SE")
    return out


def _segment_weight(direction: str, start: str | None, end: str | None, k: int) -> QPolynomial | None:
    """Rank contribution of the non-corner tiles of one segment.

    Horizontally a path can only move from SE corners to NW corners,
    vertically only from NW to SE.  ``None`` marks a free end.
    """
    m = k - 1
    if direction == "a":
        if start == "NW":
            return None if end == "SE" else q_power(m)
        if end == "SE":
            return ONE
        return q_number(m + 1)
    if start == "SE":
        return None if end == "NW" else ONE
    if end == "NW":
        return q_power(m)
    return q_number(m + 1)


def corner_path_weight(G: SnakeGraph | str, steps: str) -> QPolynomial:
    """Weight q_L of one lattice path L on the corner graph."""
    shape = _shape(G)
    ks = straight_segments(shape)
    d = len(ks)
    runs = run_lengths(shape)
    directions = []
    pos = 0
    for r in runs:
        directions.append(shape[pos])
        pos += r
    H = corner_graph(shape)
    states = _corner_states(H, steps) if d > 1 else []
    total = q_power(states.count("NW"))
    for j in range(d):
        start = states[j - 1] if j > 0 else None
        end = states[j] if j < d - 1 else None
        seg = _segment_weight(directions[j], start, end, ks[j])
        if seg is None:
            return ZERO
        total = total * seg
    return total


def rank_fibonacci(G: SnakeGraph | str) -> QPolynomial:
    """Sum of q_L over the lattice paths of the (d-1)-tile corner graph."""
    shape = _shape(G)
    ks = straight_segments(shape)
    if len(ks) == 1:
        return q_number(len(shape) + 2)
    H = corner_graph(shape)
    total = ZERO
    for steps in lattice_paths(H):
        total = total + corner_path_weight(shape, steps)
    return total


# ---------------------------------------------------------------- q-rationals

def truncated_shape(shape: str, k: int) -> str | None:
    """Shape after deleting the first k tiles, or None when nothing is left."""
    if k >= len(shape) + 1:
        return None
    return shape[k:]


def matching_rank_polynomial(shape: str | None) -> QPolynomial:
    """Rank polynomial of the perfect-matching poset of an unlabeled snake graph."""
    if shape is None:
        return ONE
    from .core import dual_word
    from .expansions import enumerate_P
    # G_w has shape dual_word(w), so this word carries a labeled copy of the shape
    return rank_generating_function(enumerate_P(dual_word(shape)))


def q_deformed_rational(w: str) -> tuple[QPolynomial, QPolynomial]:
    """(ℙ_w(q), ℙ_w^{a1}(q)) with a1 the first entry of CF(w).

    The truncated lattice keeps the orientation it has inside G_w.  Deleting
    an odd number of tiles flips which matchings are twisted up, so its rank
    polynomial is read backwards in that case.
    """
    from .core import dual_word
    shape = dual_word(check_word(w))
    a1 = cf_from_snake(SnakeGraph.from_shape(shape))[0]
    den = matching_rank_polynomial(truncated_shape(shape, a1))
    if a1 % 2 == 1:
        den = den.reversed()
    return matching_rank_polynomial(shape), den


def q_deformed_rational_dual(w: str) -> tuple[QPolynomial, QPolynomial]:
    """(𝕃_w(q), 𝕃_w^{b1}(q)) on the lattice paths of G_w, b1 the first entry of CF(w*)."""
    from .core import dual_word
    w = check_word(w)
    shape = dual_word(w)
    b1 = cf_from_snake(SnakeGraph.from_shape(w))[0]
    rest = truncated_shape(shape, b1)
    return rank_recursive(shape), (ONE if rest is None else rank_recursive(rest))


def q_rational_value_at_one(pair: tuple[QPolynomial, QPolynomial]) -> Fraction:
    return Fraction(pair[0](1), pair[1](1))


def cf_fraction(w: str) -> Fraction:
    from .core import dual_word
    return cf_value(cf_from_snake(SnakeGraph.from_shape(dual_word(check_word(w)))))


# ---------------------------------------------------------------- coefficient shape

def _strictly_up(seq) -> bool:
    return all(a < b for a, b in zip(seq, seq[1:]))


def _strictly_down(seq) -> bool:
    return all(a > b for a, b in zip(seq, seq[1:]))


def is_unimodal(seq) -> bool:
    seq = list(seq)
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    return i == len(seq) - 1 or not seq


def is_symmetric(seq) -> bool:
    seq = list(seq)
    return seq == seq[::-1]


def is_weakly_trapezoidal(seq) -> bool:
    """Strictly up, one flat top, strictly down, with a middle term on top."""
    r = list(seq)
    if not r:
        return True
    top = max(r)
    first = r.index(top)
    last = len(r) - 1 - r[::-1].index(top)
    if any(v != top for v in r[first:last + 1]):
        return False
    if not (_strictly_up(r[:first + 1]) and _strictly_down(r[last:])):
        return False
    n = len(r) - 1
    middle = {n // 2, (n + 1) // 2}
    return any(r[j] == top for j in middle)


def is_almost_weakly_trapezoidal(seq) -> bool:
    r = list(seq)
    if len(r) < 3:
        return is_weakly_trapezoidal(r)
    if not (r[0] <= r[1] and r[-2] >= r[-1]):
        return False
    return is_weakly_trapezoidal(r[1:-1])


def has_unimodal_growth(seq) -> bool:
    """|r_{j+1} - r_j| splits into two unimodal runs and is not constant."""
    r = list(seq)
    diffs = [abs(b - a) for a, b in zip(r, r[1:])]
    if len(set(diffs)) <= 1:
        return False
    return any(is_unimodal(diffs[:s]) and is_unimodal(diffs[s:]) for s in range(len(diffs) + 1))


def plateaus(seq) -> list[tuple[int, int]]:
    """Maximal runs of equal neighbours as (start degree, number of terms)."""
    r = list(seq)
    out = []
    i = 0
    while i < len(r):
        j = i
        while j + 1 < len(r) and r[j + 1] == r[i]:
            j += 1
        if j > i:
            out.append((i, j - i + 1))
        i = j + 1
    return out


def analyze(p: QPolynomial) -> dict:
    r = p.to_list()
    if any(c < 0 for c in r):
        raise ValueError("coefficient analysis needs nonnegative coefficients")
    return {
        "unimodal": is_unimodal(r),
        "symmetric": is_symmetric(r),
        "weakly_trapezoidal": is_weakly_trapezoidal(r),
        "almost_weakly_trapezoidal": is_almost_weakly_trapezoidal(r),
        "unimodal_growth": has_unimodal_growth(r),
        "plateaus": plateaus(r),
    }


# ---------------------------------------------------------------- symmetry

def symmetry_by_shape(G: SnakeGraph | str) -> dict:
    """Predicted symmetry of 𝕃 and ℙ from the shape, next to the observed one."""
    from .core import conjugate_word, dual_word, reverse_word
    shape = _shape(G)
    sym = reverse_word(shape) == shape
    selfconj = conjugate_word(shape) == shape
    l = len(shape)
    P_pred = (l % 2 == 1 and sym) or (l % 2 == 0 and selfconj)
    L_poly = rank_recursive(shape)
    P_poly = rank_recursive(dual_word(shape))
    return {
        "shape": shape,
        "L_symmetric_predicted": sym,
        "P_symmetric_predicted": P_pred,
        "L_symmetric": is_symmetric(L_poly.to_list()),
        "P_symmetric": is_symmetric(P_poly.to_list()),
    }
