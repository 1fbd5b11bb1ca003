"""Folded labelled digraphs over a free product of cyclic groups.

A :class:`LabelledDigraph` stores, for every label of the alphabet, a partial
injective successor map on the vertices ``0..n-1``.  When every successor map
is a total bijection the graph is *regular* and is the Schreier graph of a
subgroup of the free product named by its signature.  Split graphs, links and
all intermediate assemblies use the same type.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .perms import PermutationGroup

INF = math.inf


class GraphError(ValueError):
    """Malformed graph data or an operation applied outside its domain."""


def _parse_order(x) -> float | int:
    if isinstance(x, str):
        x = x.strip().lower()
        if x in ("inf", "infinity", "oo", "∞"):
            return INF
        x = int(x)
    if x == INF:
        return INF
    if int(x) != x:
        raise GraphError(f"bad order {x!r}")
    return int(x)


@dataclass(frozen=True)
class FreeProductSignature:
    """The orders ``(p_1, ..., p_n)`` of ``Z_{p_1} * ... * Z_{p_n}``.

    Infinite factors are stored as ``math.inf``.
    """

    orders: tuple

    def __post_init__(self):
        orders = tuple(_parse_order(p) for p in self.orders)
        if not orders:
            raise GraphError("a signature needs at least one factor")
        for p in orders:
            if p != INF and p < 2:
                raise GraphError(f"finite orders must be >= 2, got {p}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def parse(cls, text: str) -> "FreeProductSignature":
        return cls(tuple(t for t in text.split(",") if t.strip()))

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self):
        return iter(self.orders)

    def __getitem__(self, i):
        return self.orders[i]

    def __str__(self) -> str:
        return ",".join("inf" if p == INF else str(p) for p in self.orders)

    def to_json(self) -> list:
        return ["inf" if p == INF else p for p in self.orders]

    @property
    def is_infinite_dihedral(self) -> bool:
        return self.orders == (2, 2)

    def default_labels(self) -> tuple[str, ...]:
        if self.orders == (2, 2, 2):
            return ("r", "g", "b")
        if len(self.orders) == 2 and all(p != INF for p in self.orders):
            return ("r", "c")
        return tuple(f"x{i + 1}" for i in range(len(self.orders)))


@dataclass(frozen=True)
class DanglingVertex:
    """A split vertex that keeps only the edges of labels in ``colours``."""

    vertex: int
    colours: frozenset

    def __post_init__(self):
        object.__setattr__(self, "colours", frozenset(self.colours))


@dataclass(frozen=True, eq=False)
class LabelledDigraph:
    """Vertices ``0..n-1`` with one partial injective successor map per label.

    ``succ[i][v]`` is the terminus of the ``i``-labelled edge leaving ``v``,
    or ``None``.  Instances are immutable; every operation returns a new graph.
    """

    signature: FreeProductSignature
    succ: tuple
    labels: tuple = ()
    basepoint: int | None = None
    dangling: tuple = ()
    n: int = field(default=-1)

    def __post_init__(self):
        succ = tuple(tuple(row) for row in self.succ)
        labels = tuple(self.labels) or self.signature.default_labels()
        if len(succ) != len(self.signature):
            raise GraphError("one successor map per signature factor is required")
        if len(labels) != len(succ) or len(set(labels)) != len(labels):
            raise GraphError(f"labels {labels!r} do not match the signature")
        n = self.n if self.n >= 0 else (len(succ[0]) if succ else 0)
        for i, row in enumerate(succ):
            if len(row) != n:
                raise GraphError(f"label {labels[i]!r}: expected {n} entries")
            seen = set()
            for x in row:
                if x is None:
                    continue
                if not (0 <= x < n):
                    raise GraphError(f"label {labels[i]!r}: target {x} out of range")
                if x in seen:
                    raise GraphError(f"label {labels[i]!r} is not injective at {x}")
                seen.add(x)
        if self.basepoint is not None and not (0 <= self.basepoint < n):
            raise GraphError("basepoint out of range")
        dangling = tuple(
            sorted(
                (d if isinstance(d, DanglingVertex) else DanglingVertex(*d) for d in self.dangling),
                key=lambda d: d.vertex,
            )
        )
        object.__setattr__(self, "succ", succ)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dangling", dangling)

    # -- basic accessors -------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self.n

    @cached_property
    def pred(self) -> tuple:
        out = []
        for row in self.succ:
            inv = [None] * self.n
            for v, w in enumerate(row):
                if w is not None:
                    inv[w] = v
            out.append(tuple(inv))
        return tuple(out)

    def label_index(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < len(self.labels):
                raise GraphError(f"no label {label}")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"no label {label!r}") from None

    def edges(self):
        """Yield ``(label_index, origin, terminus)`` for every edge."""
        for i, row in enumerate(self.succ):
            for v, w in enumerate(row):
                if w is not None:
                    yield i, v, w

    @cached_property
    def edge_count(self) -> int:
        return sum(1 for row in self.succ for w in row if w is not None)

    def profile(self, v: int) -> tuple:
        """Which labels have an out-edge and an in-edge at ``v``."""
        return (
            tuple(row[v] is not None for row in self.succ),
            tuple(row[v] is not None for row in self.pred),
        )

    def is_label_total(self, i: int) -> bool:
        return all(w is not None for w in self.succ[i])

    @property
    def is_regular(self) -> bool:
        return all(self.is_label_total(i) for i in range(len(self.succ)))

    def permutation(self, label) -> tuple:
        i = self.label_index(label)
        if not self.is_label_total(i):
            raise GraphError(f"label {self.labels[i]!r} is not a permutation")
        return self.succ[i]

    @cached_property
    def _dangler_map(self) -> dict:
        return {d.vertex: d for d in self.dangling}

    def dangler_at(self, v: int) -> DanglingVertex | None:
        return self._dangler_map.get(v)

    def colour_names(self, d: DanglingVertex) -> list[str]:
        return [self.labels[i] for i in sorted(d.colours)]

    def replace(self, **changes) -> "LabelledDigraph":
        data = dict(
            signature=self.signature,
            succ=self.succ,
            labels=self.labels,
            basepoint=self.basepoint,
            dangling=self.dangling,
        )
        data.update(changes)
        return LabelledDigraph(**data)

    def with_basepoint(self, v: int | None) -> "LabelledDigraph":
        return self.replace(basepoint=v)

    @property
    def anchor(self) -> int:
        return self.basepoint if self.basepoint is not None else 0

    def __eq__(self, other):
        if not isinstance(other, LabelledDigraph):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.labels == other.labels
            and self.n == other.n
            and self.succ == other.succ
            and self.basepoint == other.basepoint
            and self.dangling == other.dangling
        )

    def __hash__(self):
        return hash((self.signature, self.labels, self.succ, self.basepoint, self.dangling))

    def __repr__(self):
        return (
            f"LabelledDigraph(n={self.n}, signature=({self.signature}), "
            f"labels={self.labels}, dangling={len(self.dangling)})"
        )


def from_permutations(
    perms: Sequence[Sequence[int]],
    signature: FreeProductSignature | Sequence | str,
    labels: Sequence[str] = (),
    basepoint: int | None = 0,
) -> LabelledDigraph:
    if isinstance(signature, str):
        signature = FreeProductSignature.parse(signature)
    elif not isinstance(signature, FreeProductSignature):
        signature = FreeProductSignature(tuple(signature))
    return LabelledDigraph(signature, tuple(tuple(p) for p in perms), tuple(labels), basepoint)


# -- words ---------------------------------------------------------------


def _parse_step(g: LabelledDigraph, step) -> tuple[int, int]:
    if isinstance(step, tuple):
        label, sign = step
        return g.label_index(label), (1 if sign > 0 else -1)
    if isinstance(step, str):
        for suffix in ("^-1", "-", "'"):
            if step.endswith(suffix) and step != suffix:
                return g.label_index(step[: -len(suffix)]), -1
        if step.endswith("+"):
            step = step[:-1]
        return g.label_index(step), 1
    return g.label_index(step), 1


def word(g: LabelledDigraph, text: str) -> list[tuple[int, int]]:
    """Split a string of single-character label names into a forward word."""
    return [(g.label_index(ch), 1) for ch in text]


def follow_word(g: LabelledDigraph, v: int, steps: Iterable) -> int | None:
    """Terminus of the path from ``v`` spelling ``steps``, or ``None``.

    A step is a label (name or index, followed forwards), a string ending in
    ``-`` for the inverse direction, or a ``(label, +1/-1)`` pair.
    """
    x = v
    for step in steps:
        i, sign = _parse_step(g, step)
        x = g.succ[i][x] if sign > 0 else g.pred[i][x]
        if x is None:
            return None
    return x


# -- validity --------------------------------------------------------------


@dataclass(frozen=True)
class ValidityReport:
    is_regular: bool
    is_connected: bool
    degenerate_cycles: tuple
    is_schreier: bool
    is_free: bool
    index: int | None
    bad_cycles: tuple = ()

    def to_json(self) -> dict:
        return {
            "is_regular": self.is_regular,
            "is_connected": self.is_connected,
            "degenerate_cycles": [list(c) for c in self.degenerate_cycles],
            "bad_cycles": [list(c) for c in self.bad_cycles],
            "is_schreier": self.is_schreier,
            "is_free": self.is_free,
            "index": self.index,
        }


def components(g: LabelledDigraph) -> list[list[int]]:
    """Connected components of the underlying undirected graph."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, v, w in g.edges():
        a, b = find(v), find(w)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def is_connected(g: LabelledDigraph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def label_cycles(g: LabelledDigraph, i: int) -> list[tuple[int, ...]]:
    """Closed cycles of label ``i``; open paths of a partial map are skipped."""
    row = g.succ[i]
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = row[start]
        while x is not None and x != start and not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = row[x]
        if x == start:
            out.append(tuple(cyc))
        else:
            # mark the rest of an open path
            x = g.pred[i][start]
            while x is not None and not seen[x]:
                seen[x] = True
                x = g.pred[i][x]
    return out


def validate(g: LabelledDigraph) -> ValidityReport:
    regular = g.is_regular
    connected = is_connected(g)
    degenerate = []
    bad = []
    for i, p in enumerate(g.signature.orders):
        if p == INF:
            continue
        for cyc in label_cycles(g, i):
            k = len(cyc)
            if k == p:
                continue
            if p % k == 0:
                degenerate.append((g.labels[i], k, min(cyc)))
            else:
                bad.append((g.labels[i], k, min(cyc)))
    schreier = regular and connected and not bad
    free = schreier and not degenerate
    return ValidityReport(
        is_regular=regular,
        is_connected=connected,
        degenerate_cycles=tuple(degenerate),
        is_schreier=schreier,
        is_free=free,
        index=g.n if schreier else None,
        bad_cycles=tuple(bad),
    )


# -- morphisms ---------------------------------------------------------------


def unique_morphism(a: LabelledDigraph, va: int, b: LabelledDigraph, vb: int) -> tuple | None:
    """The label-preserving vertex map ``a -> b`` with ``va -> vb``, if any.

    ``b`` is folded, so the map is forced by following edges from ``va``; it
    is returned as a tuple indexed by the vertices of ``a``.  ``None`` means
    some edge of ``a`` has no image, or ``a`` is not connected.
    """
    image = [None] * a.n
    image[va] = vb
    queue = deque([va])
    reached = 1
    asucc, apred, bsucc, bpred = a.succ, a.pred, b.succ, b.pred
    k = len(asucc)
    while queue:
        x = queue.popleft()
        y = image[x]
        for i in range(k):
            x2 = asucc[i][x]
            if x2 is not None:
                y2 = bsucc[i][y]
                if y2 is None:
                    return None
                cur = image[x2]
                if cur is None:
                    image[x2] = y2
                    reached += 1
                    queue.append(x2)
                elif cur != y2:
                    return None
            x2 = apred[i][x]
            if x2 is not None:
                y2 = bpred[i][y]
                if y2 is None:
                    return None
                cur = image[x2]
                if cur is None:
                    image[x2] = y2
                    reached += 1
                    queue.append(x2)
                elif cur != y2:
                    return None
    if reached != a.n:
        return None
    return tuple(image)


def _is_injective(m: Sequence[int]) -> bool:
    return len(set(m)) == len(m)


def find_embeddings(a: LabelledDigraph, b: LabelledDigraph) -> list[tuple]:
    """All injective morphisms ``a -> b`` (``a`` connected and non-empty)."""
    if a.n == 0:
        raise GraphError("cannot embed the empty graph")
    if a.n > b.n:
        return []
    anchor = a.anchor
    out = []
    for u in range(b.n):
        m = unique_morphism(a, anchor, b, u)
        if m is not None and _is_injective(m):
            out.append(m)
    return out


def automorphisms(g: LabelledDigraph) -> PermutationGroup:
    """Unbased automorphism group of a connected folded graph.

    For a regular connected graph with basepoint subgroup ``H`` this group is
    isomorphic to ``N(H)/H``.
    """
    anchor = g.anchor
    prof = g.profile(anchor)
    found = []
    for u in range(g.n):
        if g.profile(u) != prof:
            continue
        m = unique_morphism(g, anchor, g, u)
        if m is not None and _is_injective(m):
            found.append(m)
    return PermutationGroup.from_elements(g.n, found)


def isomorphism(a: LabelledDigraph, b: LabelledDigraph) -> tuple | None:
    """An unbased isomorphism ``a -> b``, or ``None``."""
    if a.n != b.n or a.edge_count != b.edge_count or a.labels != b.labels:
        return None
    if a.n == 0:
        return ()
    anchor = a.anchor
    prof = a.profile(anchor)
    for u in range(b.n):
        if b.profile(u) != prof:
            continue
        m = unique_morphism(a, anchor, b, u)
        if m is not None and _is_injective(m):
            return m
    return None


def isomorphic(a: LabelledDigraph, b: LabelledDigraph) -> bool:
    return isomorphism(a, b) is not None


def based_isomorphic(a: LabelledDigraph, b: LabelledDigraph) -> bool:
    """Isomorphism sending basepoint to basepoint."""
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    m = unique_morphism(a, a.anchor, b, b.anchor)
    return m is not None and _is_injective(m)


# -- surgery -----------------------------------------------------------------


def _colour_set(g: LabelledDigraph, colours) -> frozenset:
    return frozenset(g.label_index(c) for c in colours)


def split_vertex(g: LabelledDigraph, v: int, colours) -> tuple[LabelledDigraph, DanglingVertex, DanglingVertex]:
    """Split ``v`` into a ``Y``-coloured dangler (keeps index ``v``) and its
    complement (new index ``n``).

    Returns the new graph with the two dangler records ``(d_Y, d_rest)``.
    """
    Y = _colour_set(g, colours)
    X = frozenset(range(len(g.labels)))
    if not Y or Y == X:
        raise GraphError("split colours must be a proper non-empty subset of the alphabet")
    if g.dangler_at(v) is not None:
        raise GraphError(f"vertex {v} is already dangling")
    n = g.n
    new = n
    succ = [list(row) + [None] for row in g.succ]
    for i in X - Y:
        row = succ[i]
        w = row[v]
        u = g.pred[i][v]
        row[v] = None
        if w is not None:
            row[new] = new if w == v else w
        if u is not None and u != v:
            row[u] = new
    d_y = DanglingVertex(v, Y)
    d_rest = DanglingVertex(new, X - Y)
    out = g.replace(succ=succ, dangling=g.dangling + (d_y, d_rest))
    return out, d_y, d_rest


def glue_pairs(g: LabelledDigraph, pairs: Iterable[tuple]) -> tuple[LabelledDigraph, list[int]]:
    """Identify complementary dangler pairs in one pass.

    Each pair entry may be a :class:`DanglingVertex` or a vertex index.  The
    surviving vertex is the smaller index; indices are then compacted.
    Returns the glued graph and the old-to-new vertex map.
    """
    X = frozenset(range(len(g.labels)))
    merge: dict[int, int] = {}
    used = set()
    for u, w in pairs:
        du = u if isinstance(u, DanglingVertex) else g.dangler_at(u)
        dw = w if isinstance(w, DanglingVertex) else g.dangler_at(w)
        if du is None or dw is None or g.dangler_at(du.vertex) != du or g.dangler_at(dw.vertex) != dw:
            raise GraphError(f"gluing needs two dangling vertices, got {u!r}, {w!r}")
        if du.vertex == dw.vertex:
            raise GraphError("cannot glue a vertex to itself")
        if du.colours & dw.colours or (du.colours | dw.colours) != X:
            raise GraphError(
                f"danglers {du.vertex} {g.colour_names(du)} and {dw.vertex} "
                f"{g.colour_names(dw)} are not complementary"
            )
        if du.vertex in used or dw.vertex in used:
            raise GraphError("a dangler can be glued only once")
        used.update((du.vertex, dw.vertex))
        keep, drop = sorted((du.vertex, dw.vertex))
        merge[drop] = keep
    # compaction map
    newidx = [0] * g.n
    k = 0
    for v in range(g.n):
        if v in merge:
            continue
        newidx[v] = k
        k += 1
    for drop, keep in merge.items():
        newidx[drop] = newidx[keep]
    succ = []
    for row in g.succ:
        out = [None] * k
        for v, w in enumerate(row):
            if w is not None:
                out[newidx[v]] = newidx[w]
        succ.append(out)
    dangling = tuple(
        DanglingVertex(newidx[d.vertex], d.colours) for d in g.dangling if d.vertex not in used
    )
    bp = None if g.basepoint is None else newidx[g.basepoint]
    return g.replace(succ=succ, dangling=dangling, basepoint=bp), newidx


def glue(g: LabelledDigraph, u, v) -> LabelledDigraph:
    """Identify two complementary dangling vertices."""
    return glue_pairs(g, [(u, v)])[0]


def disjoint_union(graphs: Sequence[LabelledDigraph]) -> tuple[LabelledDigraph, list[int]]:
    """Disjoint union; returns the graph and each part's index offset.

    The basepoint of the first part (if any) is kept.
    """
    if not graphs:
        raise GraphError("empty union")
    first = graphs[0]
    succ = [[] for _ in first.succ]
    dangling = []
    offsets = []
    off = 0
    for h in graphs:
        if h.signature != first.signature or h.labels != first.labels:
            raise GraphError("union of graphs over different alphabets")
        offsets.append(off)
        for i, row in enumerate(h.succ):
            succ[i].extend(None if w is None else w + off for w in row)
        dangling.extend(DanglingVertex(d.vertex + off, d.colours) for d in h.dangling)
        off += h.n
    out = LabelledDigraph(first.signature, succ, first.labels, first.basepoint, tuple(dangling), n=off)
    return out, offsets


def relabel(g: LabelledDigraph, perm: Sequence[int]) -> LabelledDigraph:
    """Renumber vertices: old vertex ``v`` becomes ``perm[v]``."""
    succ = []
    for row in g.succ:
        out = [None] * g.n
        for v, w in enumerate(row):
            if w is not None:
                out[perm[v]] = perm[w]
        succ.append(out)
    dangling = tuple(DanglingVertex(perm[d.vertex], d.colours) for d in g.dangling)
    bp = None if g.basepoint is None else perm[g.basepoint]
    return g.replace(succ=succ, dangling=dangling, basepoint=bp)


def induced_edges(g: LabelledDigraph, keep: Iterable[int], edges: Iterable[tuple]) -> tuple[LabelledDigraph, list[int]]:
    """Subgraph on vertex set ``keep`` carrying exactly the given edges.

    ``edges`` are ``(label, origin, terminus)`` triples of ``g``.  Returns the
    subgraph (vertices renumbered in increasing order) and the map from new
    to old indices.
    """
    keep = sorted(set(keep))
    pos = {v: i for i, v in enumerate(keep)}
    succ = [[None] * len(keep) for _ in g.succ]
    for i, v, w in edges:
        succ[i][pos[v]] = pos[w]
    return LabelledDigraph(g.signature, succ, g.labels, None, n=len(keep)), keep
