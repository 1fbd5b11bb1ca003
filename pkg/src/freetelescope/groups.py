"""Finite groups given by multiplication tables, presets and Cayley graphs."""

from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from . import perms as P
from .graph import INF, FreeProductSignature, LabelledDigraph

CLOSURE_CAP = 10000
ISOMORPHISM_CAP = 512
ASSOCIATIVITY_CAP = 128


class GroupError(ValueError):
    """Invalid group data or a size cap exceeded."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements ``0..order-1`` with ``table[a][b] = a*b``.

    ``generators`` are element indices; each carries the matching entry of
    ``generator_names`` as its label.
    """

    table: tuple
    generators: tuple
    identity: int = 0
    generator_names: tuple = ()
    name: str = ""
    check: bool = field(default=True, repr=False)
    perms: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        gens = tuple(self.generators)
        if not gens:
            gens = (self.identity,)
        object.__setattr__(self, "generators", gens)
        names = tuple(self.generator_names) or tuple(f"s{i + 1}" for i in range(len(gens)))
        if len(names) != len(gens) or len(set(names)) != len(names):
            raise GroupError("generator names must be distinct, one per generator")
        object.__setattr__(self, "generator_names", names)
        if self.check:
            self.validate()

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple:
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == self.identity:
                    inv[a] = b
                    break
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def element_orders(self) -> tuple:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    def validate(self, assoc_cap: int = ASSOCIATIVITY_CAP) -> None:
        n = self.order
        if n < 1:
            raise GroupError("a group has at least one element")
        full = set(range(n))
        for row in self.table:
            if len(row) != n or set(row) != full:
                raise GroupError("table is not a Latin square")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise GroupError("table is not a Latin square")
        e = self.identity
        if any(self.table[e][a] != a or self.table[a][e] != a for a in range(n)):
            raise GroupError(f"element {e} is not the identity")
        if n <= assoc_cap:
            t = self.table
            for a in range(n):
                for b in range(n):
                    ab = t[a][b]
                    for c in range(n):
                        if t[ab][c] != t[a][t[b][c]]:
                            raise GroupError(f"table is not associative at ({a}, {b}, {c})")
        if any(not 0 <= s < n for s in self.generators):
            raise GroupError("generator out of range")
        if len(self.closure(self.generators)) != n:
            raise GroupError("generators do not generate the group")

    def closure(self, elements: Iterable[int]) -> set[int]:
        gens = list(elements)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for a in frontier:
                for s in gens:
                    b = self.table[a][s]
                    if b not in seen:
                        seen.add(b)
                        new.append(b)
            frontier = new
        return seen

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "table": [list(r) for r in self.table],
            "generators": list(self.generators),
            "generator_names": list(self.generator_names),
            "identity": self.identity,
        }

    def __repr__(self):
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.order}, generators={list(self.generator_names)})"


def group_from_function(
    elements: Sequence[Hashable],
    mul: Callable,
    generators: Sequence[Hashable],
    names: Sequence[str] = (),
    name: str = "",
) -> FiniteGroup:
    """Tabulate an abstract group; ``elements[0]`` must be the identity."""
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, tuple(index[g] for g in generators), 0, tuple(names), name)


def group_from_permutations(
    gens: Sequence[Sequence[int]],
    degree: int | None = None,
    cap: int = CLOSURE_CAP,
    names: Sequence[str] = (),
    name: str = "",
) -> FiniteGroup:
    """Closure of permutation generators; element 0 is the identity.

    Elements are numbered in breadth-first order from the identity.  With no
    generators the trivial group is returned, generated by its identity.
    """
    gens = [tuple(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for g in gens:
        if not P.is_permutation(g, degree):
            raise GroupError(f"{g!r} is not a permutation of degree {degree}")
    ident = P.identity(degree)
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for s in gens:
            b = P.compose(a, s)
            if b not in index:
                if len(elements) >= cap:
                    raise GroupError(f"closure exceeds the cap of {cap} elements")
                index[b] = len(elements)
                elements.append(b)
                queue.append(b)
    table = [[index[P.compose(a, b)] for b in elements] for a in elements]
    gidx = tuple(index[g] for g in gens)
    if not gidx:
        names = names or ("e",)
    return FiniteGroup(
        table, gidx, 0, tuple(names), name, check=len(elements) <= ASSOCIATIVITY_CAP, perms=tuple(elements)
    )


def group_from_permutation_group(pg: P.PermutationGroup, name: str = "") -> FiniteGroup:
    return group_from_permutations(pg.generators, degree=pg.degree, name=name)


# -- presets -----------------------------------------------------------------


def trivial() -> FiniteGroup:
    return group_from_permutations([], degree=1, names=("e",), name="trivial")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic(n) needs n >= 1")
    if n == 1:
        return trivial()
    return group_from_function(list(range(n)), lambda a, b: (a + b) % n, [1], ("a",), f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``, generated by a rotation and a reflection."""
    if n < 1:
        raise GroupError("dihedral(n) needs n >= 1")
    elements = [(k, f) for f in (0, 1) for k in range(n)]

    def mul(x, y):
        a, f = x
        b, g = y
        return ((a + (-b if f else b)) % n, (f + g) % 2)

    return group_from_function(elements, mul, [(1 % n, 0), (0, 1)], ("rot", "ref"), f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupError("symmetric(n) preset supports 1 <= n <= 5")
    if n == 1:
        return trivial()
    if n == 2:
        return group_from_permutations([(1, 0)], names=("t",), name="S2")
    t = P.from_cycles(n, [(0, 1)])
    c = P.from_cycles(n, [tuple(range(n))])
    return group_from_permutations([t, c], names=("t", "c"), name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupError("alternating(n) preset supports 1 <= n <= 5")
    if n <= 2:
        return trivial()
    if n == 3:
        return group_from_permutations([P.from_cycles(3, [(0, 1, 2)])], names=("a",), name="A3")
    a = P.from_cycles(n, [(0, 1, 2)])
    b = P.from_cycles(n, [tuple(range(n))] if n % 2 else [tuple(range(1, n))])
    return group_from_permutations([a, b], names=("a", "b"), name=f"A{n}")


def _qmul(x, y):
    # unit quaternions as (sign, unit) with unit in "1ijk"
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }  # fmt: skip
    s, u = prod[(x[1], y[1])]
    return (x[0] * y[0] * s, u)


def quaternion() -> FiniteGroup:
    elements = [(1, "1")] + [(s, u) for u in "1ijk" for s in (1, -1) if (s, u) != (1, "1")]
    return group_from_function(elements, _qmul, [(1, "i"), (1, "j")], ("i", "j"), "Q8")


def klein4() -> FiniteGroup:
    a = P.from_cycles(4, [(0, 1), (2, 3)])
    b = P.from_cycles(4, [(0, 2), (1, 3)])
    return group_from_permutations([a, b], names=("a", "b"), name="klein4")


def preset(name: str) -> FiniteGroup:
    """Look up a named group: ``trivial``, ``Zn``/``cyclicN``, ``Dn``,
    ``Sn``, ``An``, ``Q8``, ``klein4``/``V4``.  A ``preset:`` prefix is allowed."""
    key = name.strip()
    if key.startswith("preset:"):
        key = key[len("preset:"):]
    low = key.lower()
    if low in ("trivial", "1", "e"):
        return trivial()
    if low in ("klein4", "v4", "klein"):
        return klein4()
    if low in ("q8", "quaternion", "quaternion8"):
        return quaternion()
    for prefix, fn in (("cyclic", cyclic), ("dihedral", dihedral), ("symmetric", symmetric),
                       ("alternating", alternating), ("z", cyclic), ("c", cyclic), ("d", dihedral),
                       ("s", symmetric), ("a", alternating)):
        if low.startswith(prefix) and low[len(prefix):].isdigit():
            return fn(int(low[len(prefix):]))
    raise GroupError(f"unknown preset {name!r}")


PRESETS = ("trivial", "Z2", "Z3", "Z4", "Z5", "klein4", "S3", "D4", "Q8", "Z8", "A4")


def group_from_json(data: dict) -> FiniteGroup:
    """Parse ``{"perms": ...}``, ``{"table": ..., "generators": ...}`` or
    ``{"preset": name}``."""
    if "preset" in data:
        return preset(data["preset"])
    if "perms" in data:
        return group_from_permutations(data["perms"], degree=data.get("degree"), names=data.get("generator_names", ()))
    if "table" in data:
        return FiniteGroup(
            data["table"],
            tuple(data.get("generators", ())),
            data.get("identity", 0),
            tuple(data.get("generator_names", ())),
            data.get("name", ""),
        )
    raise GroupError("group JSON needs one of 'preset', 'perms' or 'table'")


def load_group(spec: str) -> FiniteGroup:
    """``preset:NAME`` or a path to a group JSON file."""
    if spec.startswith("preset:"):
        return preset(spec)
    with open(spec) as fh:
        return group_from_json(json.load(fh))


# -- Cayley graphs -------------------------------------------------------------


def cayley_graph(G: FiniteGroup) -> LabelledDigraph:
    """``Cay(G, S)`` with ``g --s--> g*s`` and basepoint the identity.

    Each label's order in the signature is the generator's order; a generator
    equal to the identity is recorded as infinite order so the signature stays
    within ``p >= 2`` (its loops are then not degenerate).
    """
    succ = [[G.mul(g, s) for g in range(G.order)] for s in G.generators]
    orders = []
    for s in G.generators:
        k = G.element_order(s)
        orders.append(k if k >= 2 else INF)
    return LabelledDigraph(FreeProductSignature(tuple(orders)), succ, G.generator_names, G.identity)


# -- isomorphism -------------------------------------------------------------


def _small_generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {G.identity}
    candidates = list(G.generators) + sorted(range(G.order), key=lambda a: -G.element_order(a))
    for a in candidates:
        if a not in span:
            gens.append(a)
            span = G.closure(gens)
            if len(span) == G.order:
                break
    return gens


def _extend(A: FiniteGroup, B: FiniteGroup, gens: list[int], images: tuple) -> list[int] | None:
    phi = [None] * A.order
    phi[A.identity] = B.identity
    queue = deque([A.identity])
    while queue:
        a = queue.popleft()
        for s, t in zip(gens, images):
            x = A.mul(a, s)
            y = B.mul(phi[a], t)
            if phi[x] is None:
                phi[x] = y
                queue.append(x)
            elif phi[x] != y:
                return None
    if len(set(phi)) != B.order:
        return None
    return phi


def isomorphism(A: FiniteGroup, B: FiniteGroup, cap: int = ISOMORPHISM_CAP) -> list[int] | None:
    """An isomorphism ``A -> B`` as an element map, or ``None``."""
    if max(A.order, B.order) > cap:
        raise GroupError(f"group order exceeds the isomorphism cap {cap}")
    if A.order != B.order:
        return None
    if Counter(A.element_orders) != Counter(B.element_orders):
        return None
    gens = _small_generating_set(A)
    if not gens:
        return [B.identity]
    pools = [[b for b in range(B.order) if B.element_order(b) == A.element_order(s)] for s in gens]
    for images in itertools.product(*pools):
        phi = _extend(A, B, gens, images)
        if phi is not None:
            return phi
    return None


def groups_isomorphic(A: FiniteGroup, B: FiniteGroup, cap: int = ISOMORPHISM_CAP) -> bool:
    return isomorphism(A, B, cap) is not None
