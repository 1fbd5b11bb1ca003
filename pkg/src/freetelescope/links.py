"""Product graphs, edge-links, vertex-links and their root predicates.

Two families are supported: ``Z_p * Z_q`` with ``p >= 3, q >= 2`` (labels
``r`` and ``c``) and ``Z_2 * Z_2 * Z_2`` (labels ``r``, ``g``, ``b``).  An
edge-link is a product graph with one vertex split and has exactly one vertex
satisfying the root predicate; a vertex-link has two vertices split and none.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import (
    INF,
    DanglingVertex,
    FreeProductSignature,
    GraphError,
    LabelledDigraph,
    follow_word,
    split_vertex,
)

SIG_222 = FreeProductSignature((2, 2, 2))
ROOT_WORD_222 = "rgbgrgr"


class LinkError(GraphError):
    """A link construction violated its own guard (root uniqueness)."""


@dataclass(frozen=True)
class LinkGraph:
    """A link with its named danglers.

    ``plus``/``minus`` are ``v_+``/``v_-``; ``u_plus``/``u_minus`` exist on
    vertex-links only.  ``root`` is set on edge-links only.
    """

    graph: LabelledDigraph
    kind: str
    plus: DanglingVertex
    minus: DanglingVertex
    u_plus: DanglingVertex | None = None
    u_minus: DanglingVertex | None = None
    root: int | None = None

    @property
    def danglers(self) -> tuple:
        return tuple(d for d in (self.plus, self.minus, self.u_plus, self.u_minus) if d is not None)


def base_signature(sig) -> FreeProductSignature:
    """Check that ``sig`` is one of the two base families and normalize it."""
    if not isinstance(sig, FreeProductSignature):
        sig = FreeProductSignature(tuple(sig))
    if sig.orders == (2, 2, 2):
        return sig
    if len(sig) == 2:
        p, q = sig.orders
        if p != INF and q != INF and p >= 3 and q >= 2:
            return sig
    raise GraphError(f"({sig}) is not a base signature: need (p,q) with p>=3, q>=2, or (2,2,2)")


# -- Z_p * Z_q ---------------------------------------------------------------


def vertex_id(p: int, j: int, i: int) -> int:
    """Index of ``v_{j,i}`` (position ``j`` on red cycle ``i``) in ``G_{p,q}``."""
    return i * p + j


def product_graph(p: int, q: int) -> LabelledDigraph:
    """The regular graph ``G_{p,q}``: ``q`` red ``p``-cycles joined by cyan ``q``-cycles."""
    if p == INF or q == INF or p < 3 or q < 2:
        raise GraphError(f"product_graph needs finite p >= 3 and q >= 2, got ({p}, {q})")
    n = p * q
    vid = lambda j, i: vertex_id(p, j, i)  # noqa: E731
    red = [None] * n
    cyan = [None] * n
    for i in range(q):
        for j in range(p):
            red[vid(j, i)] = vid((j + 1) % p, i)

    def cycle(vs):
        for a, b in zip(vs, vs[1:] + vs[:1]):
            cyan[a] = b

    # v00 -> v10 -> v11 -> ... -> v1,q-2 -> v00
    cycle([vid(0, 0)] + [vid(1, i) for i in range(q - 1)])
    # v01 -> v02 -> ... -> v0,q-1 -> v1,q-1 -> v01
    cycle([vid(0, i) for i in range(1, q)] + [vid(1, q - 1)])
    for j in range(2, p):
        cycle([vid(j, i) for i in range(q)])
    return LabelledDigraph(FreeProductSignature((p, q)), (red, cyan), ("r", "c"), basepoint=0)


def edge_link(p: int, q: int) -> LinkGraph:
    """Split ``v_{0,0}`` along ``{c}``: ``v_+`` keeps cyan, ``v_-`` keeps red."""
    g = product_graph(p, q)
    g, plus, minus = split_vertex(g.with_basepoint(None), vertex_id(p, 0, 0), ["c"])
    root = vertex_id(p, 0, q - 1)
    _check_roots(g, [root], "edge-link")
    return LinkGraph(g, "edge", plus, minus, root=root)


def vertex_link(p: int, q: int) -> LinkGraph:
    """Split ``v_{0,0}`` and ``v_{0,q-1}``.

    Here ``v_+`` is the red half of ``v_{0,0}`` and ``v_-`` its cyan half;
    ``u_+`` is the red half of ``v_{0,q-1}`` and ``u_-`` its cyan half.
    """
    e = edge_link(p, q)
    g, u_plus, u_minus = split_vertex(e.graph, vertex_id(p, 0, q - 1), ["r"])
    _check_roots(g, [], "vertex-link")
    return LinkGraph(g, "vertex", e.minus, e.plus, u_plus, u_minus)


# -- Z_2 * Z_2 * Z_2 -----------------------------------------------------------

# Lexicographically least solution of search_base_graph_222(): three
# fixed-point-free involutions on 8 points, split colours {g}.
BASE_222_PERMS = (
    (2, 3, 0, 1, 5, 4, 7, 6),
    (1, 0, 4, 5, 2, 3, 7, 6),
    (1, 0, 5, 6, 7, 2, 3, 4),
)
BASE_222_SPLIT = ("g",)


def _involutions(n: int) -> list[tuple]:
    def matchings(pts):
        if not pts:
            yield []
            return
        a = pts[0]
        for k in range(1, len(pts)):
            rest = pts[1:k] + pts[k + 1:]
            for m in matchings(rest):
                yield [(a, pts[k])] + m

    out = []
    for m in matchings(list(range(n))):
        img = [0] * n
        for a, b in m:
            img[a], img[b] = b, a
        out.append(tuple(img))
    return sorted(out)


def _is_222_candidate(perms, split) -> bool:
    from .graph import is_connected

    g = LabelledDigraph(SIG_222, perms, ("r", "g", "b"))
    if not is_connected(g):
        return False
    e, _, _ = split_vertex(g, 7, split)
    bg = [v for v in range(e.n) if e.succ[2][v] is not None and e.succ[2][v] == e.succ[1][v]]
    if bg != [0, 1]:
        return False
    w = list(ROOT_WORD_222)
    if follow_word(e, 1, w) != 1 or follow_word(e, 0, w) == 0:
        return False
    v, _, _ = split_vertex(e, 0, split)
    return not p_vertices(v)


def search_base_graph_222(limit: int = 1) -> list[tuple]:
    """Exhaustive search for candidate ``G_{2,2,2}`` graphs.

    Triples ``(r, g, b)`` of fixed-point-free involutions on 8 points are
    scanned in lexicographic order; for each, split colour sets ``{r}``,
    ``{g}``, ``{b}`` are tried in turn.  A triple qualifies when splitting
    ``v_7`` leaves ``v_0, v_1`` as the only vertices with ``v.b = v.g``, the
    root word loops at ``v_1`` but not at ``v_0``, and additionally splitting
    ``v_0`` leaves no root.  Returns up to ``limit`` ``(perms, split)`` pairs.
    """
    invs = _involutions(8)
    found = []
    for r in invs:
        for g in invs:
            for b in invs:
                # v0 and v1 must carry a blue/green double edge
                if b[0] != g[0] or b[1] != g[1]:
                    continue
                for split in (("r",), ("g",), ("b",)):
                    if _is_222_candidate((r, g, b), split):
                        found.append(((r, g, b), split))
                        break
                if len(found) >= limit:
                    return found
    return found


def base_graph_222() -> LabelledDigraph:
    return LabelledDigraph(SIG_222, BASE_222_PERMS, ("r", "g", "b"), basepoint=0)


def edge_link_222() -> LinkGraph:
    """Split ``v_7``: ``v_+`` keeps the split colours, ``v_-`` the rest; root ``v_1``."""
    g = base_graph_222().with_basepoint(None)
    g, plus, minus = split_vertex(g, 7, BASE_222_SPLIT)
    _check_roots(g, [1], "edge-link")
    return LinkGraph(g, "edge", plus, minus, root=1)


def vertex_link_222() -> LinkGraph:
    """Additionally split ``v_0``; ``u_-`` keeps the split colours, ``u_+`` the rest."""
    e = edge_link_222()
    g, u_minus, u_plus = split_vertex(e.graph, 0, BASE_222_SPLIT)
    _check_roots(g, [], "vertex-link")
    return LinkGraph(g, "vertex", e.minus, e.plus, u_plus, u_minus)


# -- dispatch and predicates ---------------------------------------------------


@lru_cache(maxsize=None)
def _links(orders: tuple) -> tuple[LinkGraph, LinkGraph]:
    if orders == (2, 2, 2):
        return edge_link_222(), vertex_link_222()
    p, q = orders
    return edge_link(p, q), vertex_link(p, q)


def links_for(sig) -> tuple[LinkGraph, LinkGraph]:
    """``(edge_link, vertex_link)`` for a base signature."""
    return _links(base_signature(sig).orders)


def _p_pq(g: LabelledDigraph, v: int) -> bool:
    x = g.succ[0][v]
    return x is not None and x == g.succ[1][v]


_ROOT_STEPS = tuple(("rgb".index(ch), 1) for ch in ROOT_WORD_222)


def _p_222(g: LabelledDigraph, v: int) -> bool:
    x = g.succ[2][v]
    if x is None or x != g.succ[1][v]:
        return False
    return follow_word(g, v, _ROOT_STEPS) == v


def root_predicate(sig):
    """The predicate ``P`` for a base signature, as ``pred(graph, vertex)``."""
    sig = base_signature(sig)
    return _p_222 if sig.orders == (2, 2, 2) else _p_pq


def p_vertices(g: LabelledDigraph, sig=None) -> list[int]:
    """All vertices satisfying the root predicate of ``sig`` (default: ``g``'s).

    A vertex missing a required edge fails the predicate.
    """
    pred = root_predicate(g.signature if sig is None else sig)
    return [v for v in range(g.n) if pred(g, v)]


def _check_roots(g: LabelledDigraph, expected: list[int], what: str) -> None:
    found = p_vertices(g)
    if found != expected:
        raise LinkError(f"{what} of ({g.signature}) has root vertices {found}, expected {expected}")
