"""Families of pairwise non-conjugate realizations.

A census base ``H_0`` is a connected partial graph with every red cycle
complete, a single marked double edge at ``v_0`` and a pool of *free*
vertices still missing their cyan edge.  An ordering of free vertices,
read in consecutive blocks of ``q``, closes them into cyan cycles; a legal
ordering never creates a second double edge.  Splitting ``v_0`` turns each
completed graph into a piece that can be spliced into every edge-link,
giving non-isomorphic Schreier graphs of a common index ``v + e*N``
(see ``achievable_index``); other indices are not reached.

For ``(2, 2, 2)`` the same machinery runs with blue in the role of cyan and
green in the role of red: the base is a red/green alternating Hamiltonian
cycle whose only blue/green coincidence is the pair ``{v_0, v_{N-1}}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator

from . import groups as grp
from .assembly import CertificationError, Realization, edge_link_count, realize_base
from .graph import (
    FreeProductSignature,
    GraphError,
    LabelledDigraph,
    disjoint_union,
    glue_pairs,
    is_connected,
    split_vertex,
    validate,
)
from .links import LinkGraph, base_signature, links_for, p_vertices


@dataclass(frozen=True)
class CensusBase:
    """``H_0`` plus what is needed to complete it.

    ``fill`` is the label whose missing edges the orderings supply (cyan, or
    blue for ``(2,2,2)``); ``clash`` is the label a new ``fill`` edge must
    not duplicate; ``block`` is the ``fill`` cycle length.
    """

    graph: LabelledDigraph
    free: tuple
    N: int
    D: int
    block: int
    fill: int
    clash: int
    split_colours: tuple

    @property
    def F(self) -> int:
        return len(self.free)

    @property
    def prefix_length(self) -> int:
        tail = 4 if self.block == 2 else self.block
        return max(self.D - tail, 0)


def build_census_base(p: int, q: int, N: int) -> CensusBase:
    """Red ``p``-cycles joined by greedily threaded cyan ``q``-cycles."""
    if p < 3 or q < 2:
        raise GraphError("census needs p >= 3 and q >= 2")
    if N <= 0 or N % (p * q):
        raise GraphError(f"N = {N} is not a positive multiple of p*q = {p * q}")
    M = N // p
    red = [k * p + (j + 1) % p for k in range(M) for j in range(p)]
    cyan = [None] * N

    def add(cycle):
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            cyan[a] = b

    def bad(a, b):
        return red[a] == b

    # the double edge v0 -> v1, closed through fresh red cycles
    add([0, 1] + [k * p for k in range(1, q - 1)])
    joined = q - 1
    while joined < M:
        fresh = [k * p for k in range(joined, min(joined + q - 1, M))]
        joined += len(fresh)
        pool = [v for v in range(joined * p) if cyan[v] is None and v not in fresh]
        x = pool.pop(0)
        cyc = [x] + fresh
        while len(cyc) < q:
            last = len(cyc) == q - 1
            w = next(w for w in pool if not bad(cyc[-1], w) and not (last and bad(w, x)))
            pool.remove(w)
            cyc.append(w)
        add(cyc)
    g = LabelledDigraph(FreeProductSignature((p, q)), (red, cyan), ("r", "c"), basepoint=0)
    free = tuple(v for v in range(N) if cyan[v] is None)
    if len(free) % q:
        raise GraphError("internal: free vertex count is not a multiple of q")
    if not is_connected(g):
        raise GraphError("internal: census base is disconnected")
    return CensusBase(g, free, N, len(free), q, 1, 0, ("c",))


def build_census_base_222(N: int) -> CensusBase:
    """Red/green Hamiltonian cycle on ``N`` vertices with blue edge ``v_0 - v_{N-1}``."""
    if N <= 0 or N % 8:
        raise GraphError(f"N = {N} is not a positive multiple of 8")
    red = [v ^ 1 for v in range(N)]
    green = [(v + 1) % N if v % 2 else (v - 1) % N for v in range(N)]
    blue = [None] * N
    blue[0], blue[N - 1] = N - 1, 0
    g = LabelledDigraph(FreeProductSignature((2, 2, 2)), (red, green, blue), ("r", "g", "b"), basepoint=0)
    free = tuple(range(1, N - 1))
    return CensusBase(g, free, N, len(free), 2, 2, 1, ("g",))


def census_base(sig, N: int) -> CensusBase:
    sig = base_signature(sig)
    if sig.orders == (2, 2, 2):
        return build_census_base_222(N)
    return build_census_base(*sig.orders, N)


# -- orderings -------------------------------------------------------------------


def _legal_step(base: CensusBase, seq: list, w: int) -> bool:
    """May ``w`` be appended to ``seq`` (blocks of ``base.block``)?"""
    clash = base.graph.succ[base.clash]
    q = base.block
    pos = len(seq) % q
    if pos:
        prev = seq[-1]
        if clash[prev] == w:
            return False
        if q == 2 and clash[w] == prev:
            return False
    if pos == q - 1 and q > 2 and clash[w] == seq[-pos]:
        return False
    return True


def _complete(base: CensusBase, seq: list, rest: list) -> list | None:
    """Lexicographically first legal arrangement of ``rest`` after ``seq``."""
    if not rest:
        return seq
    for k, w in enumerate(rest):
        if _legal_step(base, seq, w):
            out = _complete(base, seq + [w], rest[:k] + rest[k + 1:])
            if out is not None:
                return out
    return None


def completion(base: CensusBase, sigma: Iterable[int]) -> tuple | None:
    """The full ordering determined by a prefix, or ``None`` if it cannot be completed."""
    sigma = list(sigma)
    for t in range(len(sigma)):
        if sigma[t] not in base.free or sigma[t] in sigma[:t] or not _legal_step(base, sigma[:t], sigma[t]):
            return None
    rest = [v for v in base.free if v not in set(sigma)]
    full = _complete(base, sigma, rest)
    return None if full is None else tuple(full)


def legal_orderings(
    base: CensusBase, limit: int | None = None, stats: dict | None = None, length: int | None = None
) -> Iterator[tuple]:
    """Legal prefixes in lexicographic order that admit a legal completion.

    ``length`` defaults to ``base.prefix_length``; pass ``base.D`` to list
    full orderings.  ``stats["dropped"]`` counts legal prefixes without a
    completion.
    """
    if base.D - base.block <= 0:
        return
    L = base.prefix_length if length is None else length
    if not 0 <= L <= base.D:
        raise GraphError(f"ordering length must be in 0..{base.D}")
    free = list(base.free)
    emitted = 0
    if stats is not None:
        stats.setdefault("dropped", 0)
    seq: list = []
    used = set()

    def dfs():
        nonlocal emitted
        if len(seq) == L:
            rest = [v for v in free if v not in used]
            if _complete(base, list(seq), rest) is None:
                if stats is not None:
                    stats["dropped"] += 1
                return
            emitted += 1
            yield tuple(seq)
            return
        for w in free:
            if w in used or not _legal_step(base, seq, w):
                continue
            seq.append(w)
            used.add(w)
            yield from dfs()
            seq.pop()
            used.discard(w)
            if limit is not None and emitted >= limit:
                return

    yield from dfs()


def normal_form(blocks_of: int, full: Iterable[int]) -> tuple:
    """Rotate each block to start at its least vertex, then sort the blocks."""
    full = list(full)
    blocks = []
    for k in range(0, len(full), blocks_of):
        b = full[k:k + blocks_of]
        i = b.index(min(b))
        blocks.append(tuple(b[i:] + b[:i]))
    return tuple(sorted(blocks))


def ordering_classes(base: CensusBase, stream: Iterable[tuple]) -> dict:
    """Map each normal form to ``[first ordering seen, class size]``."""
    classes: dict = {}
    for sigma in stream:
        full = completion(base, sigma)
        if full is None:
            continue
        key = normal_form(base.block, full)
        if key in classes:
            classes[key][1] += 1
        else:
            classes[key] = [sigma, 1]
    return classes


def canonical_orderings(base: CensusBase, stream: Iterable[tuple]) -> Iterator[tuple]:
    """First representative of each class of orderings giving the same graph."""
    seen = set()
    for sigma in stream:
        full = completion(base, sigma)
        if full is None:
            continue
        key = normal_form(base.block, full)
        if key not in seen:
            seen.add(key)
            yield sigma


def extend(base: CensusBase, sigma: Iterable[int]) -> LabelledDigraph:
    """``H_sigma``: close the blocks of the completed ordering into fill cycles."""
    full = completion(base, sigma)
    if full is None:
        raise GraphError(f"ordering {tuple(sigma)} is illegal or cannot be completed")
    fill = list(base.graph.succ[base.fill])
    q = base.block
    for k in range(0, len(full), q):
        b = full[k:k + q]
        for x, y in zip(b, b[1:] + b[:1]):
            fill[x] = y
    succ = list(base.graph.succ)
    succ[base.fill] = fill
    return base.graph.replace(succ=succ)


def split_census(base: CensusBase, h: LabelledDigraph):
    """Split ``v_0``; returns ``(H', d_Y, d_rest)`` with ``d_Y`` keeping the split colours."""
    out, d_y, d_rest = split_vertex(h.with_basepoint(None), 0, base.split_colours)
    if not is_connected(out):
        raise GraphError("splitting the census graph disconnected it")
    return out, d_y, d_rest


def spliced_link(link: LinkGraph, piece, d_y, d_rest) -> LinkGraph:
    """``L_e + H'``: glue the link's ``v_-`` to the piece's split-colour dangler."""
    if link.plus.colours != d_y.colours:
        raise GraphError("census piece colours do not match the edge-link")
    union, offs = disjoint_union([link.graph, piece])
    off = offs[1]
    g, newidx = glue_pairs(union, [(link.minus.vertex, d_y.vertex + off)])
    plus = g.dangler_at(newidx[link.plus.vertex])
    minus = g.dangler_at(newidx[d_rest.vertex + off])
    root = newidx[link.root]
    found = p_vertices(g)
    if found != [root]:
        raise GraphError(f"spliced edge-link has roots {found}, expected [{root}]")
    return LinkGraph(g, "edge", plus, minus, root=root)


def lower_bound(D: int, q: int) -> Fraction:
    """``(D-2)! / ((q-2)! (D/q)! q^(D/q))`` as an exact fraction."""
    if q < 2 or D < 2 or D % q:
        raise GraphError(f"lower bound needs q >= 2 and D a positive multiple of q, got D={D}, q={q}")
    k = D // q
    return Fraction(factorial(D - 2), factorial(q - 2) * factorial(k) * q**k)


@dataclass
class CensusEntry:
    sigma: tuple
    graph: LabelledDigraph  # H'_sigma
    class_size: int = 1


def census(sig, N: int, limit: int | None = None, stats: dict | None = None) -> tuple[CensusBase, list]:
    """All deduplicated ``H'_sigma`` for a base signature and size ``N``."""
    base = census_base(sig, N)
    out = []
    for sigma, size in ordering_classes(base, legal_orderings(base, limit, stats)).values():
        piece, _, _ = split_census(base, extend(base, sigma))
        out.append(CensusEntry(sigma, piece, size))
    return base, out


def achievable_index(G: grp.FiniteGroup, sig, N: int) -> int:
    """Index of every spliced realization at census size ``N``: ``v + e*N``.

    Only these indices are produced.  Reaching an arbitrary index would need
    a further padding step, which is not implemented.
    """
    sig = base_signature(sig)
    census_base(sig, N)  # validates N
    return realize_base(G, sig, fast=True).index + edge_link_count(G) * N


def splice_and_realize(G: grp.FiniteGroup, sig, N: int, sigma, fast: bool = False) -> Realization:
    """Realize ``G`` with every edge-link replaced by ``L_e + H'_sigma``."""
    sig = base_signature(sig)
    base = census_base(sig, N)
    h = extend(base, sigma)
    rep = validate(h)
    if not rep.is_free:
        raise GraphError(f"H_sigma is not free: {rep.to_json()}")
    piece, d_y, d_rest = split_census(base, h)
    link = spliced_link(links_for(sig)[0], piece, d_y, d_rest)
    R = realize_base(G, sig, fast=fast, edge_link=link)
    v_gamma = R.index - edge_link_count(G) * N
    plain = realize_base(G, sig, fast=True)
    ok = v_gamma == plain.index
    R.certificate["checks"].append({"name": "index formula", "passed": ok})
    R.certificate["accounting"].update(
        {"census_N": N, "sigma": list(sigma), "v_gamma": plain.index, "e_gamma": edge_link_count(G)}
    )
    if not ok:
        raise CertificationError("index formula", f"{R.index} != {plain.index} + {edge_link_count(G)}*{N}")
    return R
