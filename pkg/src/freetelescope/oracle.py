"""Brute-force cross-checks, independent of the morphism machinery.

``centralizer_aut`` searches vertex permutations commuting with every label
permutation by backtracking; ``enumerate_subgroups`` lists all transitive
permutation representations of a free product at small degree.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass

from . import groups as grp
from .graph import INF, FreeProductSignature, GraphError, LabelledDigraph, is_connected
from .perms import PermutationGroup, cycle_type, cycles, from_cycles

FACTORIAL_CAP = 12
ENUMERATION_CAP = 10


class OracleCapError(GraphError):
    pass


def _search_order(g: LabelledDigraph, mode: str) -> list[int]:
    if mode == "factorial":
        return list(range(g.n))
    order, seen = [0], {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for row in g.succ + g.pred:
            w = row[v]
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def centralizer_aut(g: LabelledDigraph, mode: str = "candidates", cap: int = FACTORIAL_CAP) -> PermutationGroup:
    """All ``phi`` with ``phi(pi_i(v)) = pi_i(phi(v))`` for every label ``i``.

    ``factorial`` tries every image for every vertex in natural order (only
    commutation pruning); ``candidates`` walks vertices breadth-first and
    tries only the image dictated by an already-placed neighbour.
    """
    if not g.is_regular or not is_connected(g):
        raise GraphError("centralizer_aut needs a regular connected graph")
    if mode not in ("factorial", "candidates"):
        raise GraphError(f"unknown mode {mode!r}")
    if mode == "factorial" and g.n > cap:
        raise OracleCapError(f"{g.n} vertices exceed the factorial-search cap {cap}")
    n = g.n
    perms = [tuple(r) for r in g.succ]
    invs = [tuple(r) for r in g.pred]
    order = _search_order(g, mode)
    phi = [None] * n
    used = [False] * n
    found = []

    def consistent(v: int) -> bool:
        x = phi[v]
        for p, q in zip(perms, invs):
            w = p[v]
            if phi[w] is not None and phi[w] != p[x]:
                return False
            u = q[v]
            if phi[u] is not None and phi[u] != q[x]:
                return False
        return True

    def candidates(v: int):
        if mode == "factorial":
            return range(n)
        for p, q in zip(perms, invs):
            u = q[v]
            if phi[u] is not None:
                return (p[phi[u]],)
            w = p[v]
            if phi[w] is not None:
                return (q[phi[w]],)
        return range(n)

    def bt(k: int):
        if k == n:
            found.append(tuple(phi))
            return
        v = order[k]
        for x in candidates(v):
            if used[x]:
                continue
            phi[v] = x
            used[x] = True
            if consistent(v):
                bt(k + 1)
            phi[v] = None
            used[x] = False

    bt(0)
    return PermutationGroup.from_elements(n, found)


# -- enumeration -------------------------------------------------------------------


def _perms_with_cycles(d: int, allowed) -> list[tuple]:
    """Permutations of ``range(d)`` whose cycle lengths all satisfy ``allowed``."""
    out = []

    def rec(remaining: list, cyc: list):
        if not remaining:
            out.append(from_cycles(d, cyc))
            return
        a = remaining[0]
        rest = remaining[1:]
        for k in range(1, len(remaining) + 1):
            if not allowed(k):
                continue
            for others in itertools.permutations(rest, k - 1):
                left = [x for x in rest if x not in others]
                rec(left, cyc + [(a,) + others])

    rec(list(range(d)), [])
    return out


def _allowed(p, free_only: bool):
    if p == INF:
        return lambda k: True
    if free_only:
        return lambda k: k == p
    return lambda k: p % k == 0


def _bfs_code(perms, b: int) -> tuple:
    d = len(perms[0])
    new = {b: 0}
    queue = deque([b])
    invs = []
    for p in perms:
        inv = [0] * d
        for i, x in enumerate(p):
            inv[x] = i
        invs.append(inv)
    while queue:
        v = queue.popleft()
        for p, q in zip(perms, invs):
            for w in (p[v], q[v]):
                if w not in new:
                    new[w] = len(new)
                    queue.append(w)
    relabelled = []
    for p in perms:
        row = [0] * d
        for v, w in enumerate(p):
            row[new[v]] = new[w]
        relabelled.append(tuple(row))
    return tuple(relabelled)


def canonical_code(perms) -> tuple:
    """Least basepoint-relabelled form over all basepoints (transitive input)."""
    return min(_bfs_code(perms, b) for b in range(len(perms[0])))


@dataclass
class SubgroupClass:
    """One conjugacy class of index-``d`` subgroups."""

    representative: LabelledDigraph
    index: int
    is_free: bool
    aut_order: int
    aut_group: grp.FiniteGroup
    based_count: int

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "is_free": self.is_free,
            "aut_order": self.aut_order,
            "based_count": self.based_count,
            "perms": [list(p) for p in self.representative.succ],
        }


def _transitive(perms, d) -> bool:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for v, w in enumerate(p):
            a, b = find(v), find(w)
            if a != b:
                parent[a] = b
    return len({find(v) for v in range(d)}) == 1


def enumerate_subgroups(
    sig, d: int, cap: int = ENUMERATION_CAP, free_only: bool = False, labels=None
) -> list[SubgroupClass]:
    """Conjugacy classes of index-``d`` subgroups (transitive actions up to relabelling).

    The first label runs over one representative per admissible cycle type,
    which loses nothing up to simultaneous conjugation.  ``free_only``
    restricts every finite label to full-length cycles.
    """
    if not isinstance(sig, FreeProductSignature):
        sig = FreeProductSignature.parse(sig) if isinstance(sig, str) else FreeProductSignature(tuple(sig))
    if d < 1:
        raise GraphError("index must be positive")
    if d > cap:
        raise OracleCapError(f"index {d} exceeds the enumeration cap {cap}")
    labels = tuple(labels or sig.default_labels())
    pools = [_perms_with_cycles(d, _allowed(p, free_only)) for p in sig.orders]
    firsts = {}
    for p in pools[0]:
        firsts.setdefault(cycle_type(p), p)
    classes = {}
    for first in firsts.values():
        for rest in itertools.product(*pools[1:]):
            perms = (first,) + rest
            if not _transitive(perms, d):
                continue
            code = canonical_code(perms)
            if code not in classes:
                classes[code] = perms
    out = []
    for code in sorted(classes):
        g = LabelledDigraph(sig, code, labels, basepoint=0)
        aut = centralizer_aut(g)
        free = all(
            p == INF or all(len(c) == p for c in cycles(row)) for p, row in zip(sig.orders, code)
        )
        based = len({_bfs_code(code, b) for b in range(d)})
        out.append(SubgroupClass(g, d, free, aut.order, grp.group_from_permutation_group(aut), based))
    return out


def find_class(classes: list[SubgroupClass], g: LabelledDigraph) -> SubgroupClass | None:
    """The enumerated class containing the regular graph ``g``, if any."""
    code = canonical_code([tuple(r) for r in g.succ])
    for c in classes:
        if tuple(c.representative.succ) == code:
            return c
    return None


def group_type_name(G: grp.FiniteGroup) -> str:
    for name in grp.PRESETS:
        H = grp.preset(name)
        if H.order == G.order and grp.groups_isomorphic(G, H):
            return name
    for n in range(3, 7):
        if 2 * n == G.order and grp.groups_isomorphic(G, grp.dihedral(n)):
            return f"D{n}"
    if G.order < 64 and grp.groups_isomorphic(G, grp.cyclic(G.order)):
        return f"Z{G.order}"
    return f"order{G.order}"


def quotient_histogram(sig, d: int, cap: int = ENUMERATION_CAP, free_only: bool = False) -> dict:
    """Free classes bucketed by the isomorphism type of ``N(H)/H``."""
    counts: Counter = Counter()
    for c in enumerate_subgroups(sig, d, cap, free_only):
        if c.is_free:
            counts[group_type_name(c.aut_group)] += 1
    return dict(sorted(counts.items()))

