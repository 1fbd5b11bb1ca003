"""Vertex-graphs, edge-graphs, Cayley substitution and the certified base case.

The assembled graph ``C*`` replaces every vertex of ``Cay(G, S)`` by a copy of
the vertex-graph and every ``s_i``-edge by a copy of the edge-graph of length
``i``.  Bookkeeping of where each copy landed is kept so that the S.2 check
and the census splice can refer to the inserted pieces.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import groups as grp
from .graph import (
    DanglingVertex,
    FreeProductSignature,
    GraphError,
    LabelledDigraph,
    automorphisms,
    disjoint_union,
    find_embeddings,
    glue_pairs,
    induced_edges,
    label_cycles,
    validate,
)
from .io import graph_to_json
from .links import LinkGraph, base_signature, links_for, p_vertices
from .perms import PermutationGroup


class CertificationError(RuntimeError):
    """An internal consistency check failed; ``check`` names it."""

    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"certification check '{check}' failed" + (f": {detail}" if detail else ""))
        self.check = check
        self.detail = detail


@dataclass(frozen=True)
class VertexGraph:
    """``chi[(i, +1)]`` and ``chi[(i, -1)]`` are the boundary vertices for label ``i``."""

    graph: LabelledDigraph
    chi: dict
    size: int

    @property
    def boundary(self) -> list[int]:
        return sorted(self.chi.values())


@dataclass(frozen=True)
class EdgeGraph:
    graph: LabelledDigraph
    h_plus: DanglingVertex
    h_minus: DanglingVertex
    roots: tuple
    length: int


def build_vertex_graph(sig, k: int, link: LinkGraph | None = None) -> VertexGraph:
    """``k`` vertex-links in a ring: ``v_+`` of link ``i`` meets ``u_-`` of link ``i+1``."""
    if k < 1:
        raise GraphError("a vertex-graph needs at least one label")
    if link is None:
        link = links_for(sig)[1]
    n = link.graph.n
    union, offs = disjoint_union([link.graph] * k)

    def at(d, i):
        return d.vertex + offs[i]

    pairs = [(at(link.plus, i), at(link.u_minus, (i + 1) % k)) for i in range(k)]
    g, newidx = glue_pairs(union, pairs)
    chi = {}
    for i in range(k):
        chi[(i, 1)] = newidx[at(link.u_plus, i)]
        chi[(i, -1)] = newidx[at(link.minus, i)]
    V = VertexGraph(g, chi, n)
    if p_vertices(g):
        raise CertificationError("vertex-graph roots", f"P-vertices {p_vertices(g)}")
    if not check_S1(V):
        raise CertificationError("S.1")
    return V


def chain_links(links: list[LinkGraph]) -> tuple[LabelledDigraph, DanglingVertex, DanglingVertex, list]:
    """Glue ``v_-`` of each link to ``v_+`` of the next; return the chain,
    its free ends and the old-to-new index maps per link."""
    union, offs = disjoint_union([lk.graph for lk in links])
    pairs = [(links[j].minus.vertex + offs[j], links[j + 1].plus.vertex + offs[j + 1]) for j in range(len(links) - 1)]
    g, newidx = glue_pairs(union, pairs)
    h_plus = g.dangler_at(newidx[links[0].plus.vertex + offs[0]])
    h_minus = g.dangler_at(newidx[links[-1].minus.vertex + offs[-1]])
    maps = [[newidx[v + offs[j]] for v in range(lk.graph.n)] for j, lk in enumerate(links)]
    return g, h_plus, h_minus, maps


def build_edge_graph(sig, length: int, link: LinkGraph | None = None) -> EdgeGraph:
    """A chain of ``length`` edge-links; ``h_plus``/``h_minus`` are its two free ends."""
    if length < 1:
        raise GraphError("edge-graph length must be positive")
    if link is None:
        link = links_for(sig)[0]
    g, h_plus, h_minus, maps = chain_links([link] * length)
    roots = tuple(m[link.root] for m in maps)
    found = p_vertices(g)
    if sorted(found) != sorted(roots):
        raise CertificationError("edge-graph roots", f"expected {roots}, found {found}")
    return EdgeGraph(g, h_plus, h_minus, roots, length)


def check_S1(V: VertexGraph) -> bool:
    """No non-identity automorphism of ``V`` fixes its boundary pointwise."""
    boundary = V.boundary
    for phi in automorphisms(V.graph).materialize():
        if any(phi[v] != v for v in range(len(phi))) and all(phi[b] == b for b in boundary):
            return False
    return True


@dataclass
class Assembly:
    """Where the pieces of ``C*`` live: ``vertex_copies[g]`` and
    ``edge_copies[(g, i)]`` map piece vertices to ``C*`` indices."""

    cayley: LabelledDigraph
    vertex_graph: VertexGraph
    edge_graphs: list
    vertex_copies: dict = field(default_factory=dict)
    edge_copies: dict = field(default_factory=dict)


def substitute(C: LabelledDigraph, V: VertexGraph, E: list) -> tuple[LabelledDigraph, Assembly]:
    """Replace the vertices and edges of the Cayley graph ``C`` by link complexes.

    ``E[i]`` is the edge-graph used for the ``i``-th label of ``C``.
    """
    if not C.is_regular:
        raise GraphError("substitution needs a regular Cayley graph")
    if len(E) != len(C.labels):
        raise GraphError("need one edge-graph per Cayley label")
    parts = [V.graph] * C.n
    edges = list(C.edges())  # (label, origin, terminus)
    parts += [E[i].graph for i, _, _ in edges]
    union, offs = disjoint_union(parts)
    pairs = []
    for k, (i, u, w) in enumerate(edges):
        off = offs[C.n + k]
        pairs.append((E[i].h_plus.vertex + off, V.chi[(i, 1)] + offs[u]))
        pairs.append((E[i].h_minus.vertex + off, V.chi[(i, -1)] + offs[w]))
    g, newidx = glue_pairs(union, pairs)
    if g.dangling:
        raise GraphError(f"substitution left {len(g.dangling)} dangling vertices")
    asm = Assembly(C, V, list(E))
    for u in range(C.n):
        asm.vertex_copies[u] = [newidx[v + offs[u]] for v in range(V.graph.n)]
    for k, (i, u, w) in enumerate(edges):
        off = offs[C.n + k]
        asm.edge_copies[(u, i)] = [newidx[v + off] for v in range(E[i].graph.n)]
    bp = asm.vertex_copies[C.anchor][0]
    return g.with_basepoint(bp), asm


def _piece_edges(piece: LabelledDigraph, where: list) -> list[tuple]:
    return [(i, where[v], where[w]) for i, v, w in piece.edges()]


def sub_complex(Cstar: LabelledDigraph, asm: Assembly, upto: int) -> tuple[LabelledDigraph, list]:
    """``C*_(upto)``: all vertex-graph copies plus edge-graphs of labels ``< upto``.

    Returns the subgraph and its new-to-old vertex map.
    """
    keep = set()
    edges = []
    for where in asm.vertex_copies.values():
        keep.update(where)
        edges += _piece_edges(asm.vertex_graph.graph, where)
    for (_, i), where in asm.edge_copies.items():
        if i < upto:
            keep.update(where)
            edges += _piece_edges(asm.edge_graphs[i].graph, where)
    return induced_edges(Cstar, keep, edges)


def check_S2(Cstar: LabelledDigraph, asm: Assembly) -> bool:
    """Each ``E_{s_i}`` embeds into ``C*_(i)`` only as one of the inserted copies."""
    k = len(asm.edge_graphs)
    for i in range(k):
        sub, old = sub_complex(Cstar, asm, i + 1)
        recorded = {tuple(where) for (_, j), where in asm.edge_copies.items() if j == i}
        for m in find_embeddings(asm.edge_graphs[i].graph, sub):
            if tuple(old[x] for x in m) not in recorded:
                return False
    return True


# -- realization ----------------------------------------------------------------


@dataclass
class Realization:
    schreier: LabelledDigraph
    group_in: grp.FiniteGroup
    signature: FreeProductSignature
    aut: PermutationGroup
    certificate: dict
    assembly: Assembly | None = None

    @property
    def index(self) -> int:
        return self.schreier.n

    @property
    def certified(self) -> bool:
        return all(c["passed"] for c in self.certificate["checks"])

    def to_json(self, timings: bool = False) -> dict:
        out = graph_to_json(self.schreier)
        cert = dict(self.certificate)
        if not timings:
            cert.pop("timings", None)
        out["certificate"] = cert
        out["group"] = self.group_in.to_json()
        out["aut"] = {"order": self.aut.order, "generators": [list(p) for p in self.aut.generators]}
        return out


class Certifier:
    """Runs named checks, records pass flags and timings, raises on failure."""

    def __init__(self):
        self.checks = []
        self.timings = {}

    def run(self, name: str, fn, detail=None):
        t0 = time.perf_counter()
        result = fn()
        self.timings[name] = round(time.perf_counter() - t0, 6)
        ok = bool(result)
        self.checks.append({"name": name, "passed": ok})
        if not ok:
            raise CertificationError(name, detail() if callable(detail) else (detail or ""))
        return result

    def skip(self, name: str):
        self.checks.append({"name": name, "passed": True, "skipped": True})

    def as_dict(self, **extra) -> dict:
        out = {"checks": self.checks, "timings": self.timings}
        out.update(extra)
        return out


def certify_graph(cert: Certifier, g: LabelledDigraph, G: grp.FiniteGroup, tag: str = "") -> PermutationGroup:
    """Freeness plus ``Aut(g) ~ G``; returns the automorphism group."""
    sfx = f" [{tag}]" if tag else ""
    report = validate(g)
    cert.run("free" + sfx, lambda: report.is_free, lambda: str(report.to_json()))
    aut = automorphisms(g)
    cert.run(
        "aut isomorphic to input group" + sfx,
        lambda: aut.order == G.order and grp.groups_isomorphic(grp.group_from_permutation_group(aut), G),
        lambda: f"|Aut| = {aut.order}, |G| = {G.order}",
    )
    return aut


def edge_link_count(G: grp.FiniteGroup) -> int:
    """Edge-links consumed by the substitution: ``|G| * (1 + 2 + ... + |S|)``."""
    k = len(G.generators)
    return G.order * k * (k + 1) // 2


def realize_base(
    G: grp.FiniteGroup,
    sig,
    fast: bool = False,
    edge_link: LinkGraph | None = None,
) -> Realization:
    """Certified realization of ``G`` over a base signature.

    ``edge_link`` overrides the standard edge-link (used by the census splice).
    With ``fast`` the S.2 embedding check is skipped.
    """
    sig = base_signature(sig)
    cert = Certifier()
    C = grp.cayley_graph(G)
    k = len(C.labels)
    std_edge, _ = links_for(sig)
    link = edge_link or std_edge
    V = build_vertex_graph(sig, k)
    E = [build_edge_graph(sig, i + 1, link) for i in range(k)]
    Cstar, asm = substitute(C, V, E)
    cert.run("S.1", lambda: check_S1(V))
    if fast:
        cert.skip("S.2")
    else:
        cert.run("S.2", lambda: check_S2(Cstar, asm))
    aut = certify_graph(cert, Cstar, G)
    links_used = edge_link_count(G)
    expected_n = G.order * V.graph.n + sum(E[i].graph.n - 2 for i, _, _ in C.edges())
    cert.run("index accounting", lambda: Cstar.n == expected_n, f"{Cstar.n} != {expected_n}")
    cert.run(
        "cycle lengths preserved",
        lambda: _cycle_lengths_preserved(Cstar, asm),
    )
    accounting = {
        "index": Cstar.n,
        "vertex_graph_size": V.graph.n,
        "edge_graph_sizes": [e.graph.n for e in E],
        "edge_links": links_used,
        "link_size": link.graph.n,
    }
    certificate = cert.as_dict(signature=sig.to_json(), accounting=accounting, plan=[])
    return Realization(Cstar, G, sig, aut, certificate, asm)


def _cycle_lengths_preserved(Cstar: LabelledDigraph, asm: Assembly) -> bool:
    """Closed cycles of every inserted piece reappear verbatim in ``C*`` and
    every cycle of ``C*`` has the full label order."""
    cyc = []
    for i in range(len(Cstar.labels)):
        cs = label_cycles(Cstar, i)
        if any(len(c) != Cstar.signature.orders[i] for c in cs):
            return False
        cyc.append({frozenset(c) for c in cs})
    pieces = [(asm.vertex_graph.graph, w) for w in asm.vertex_copies.values()]
    pieces += [(asm.edge_graphs[i].graph, w) for (_, i), w in asm.edge_copies.items()]
    for piece, where in pieces:
        for i in range(len(piece.labels)):
            for c in label_cycles(piece, i):
                if frozenset(where[v] for v in c) not in cyc[i]:
                    return False
    return True
