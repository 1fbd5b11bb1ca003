"""Permutations of ``{0, ..., n-1}`` in one-line image notation.

A permutation ``p`` is a tuple with ``p[i]`` the image of ``i``.  Products are
read left to right: ``compose(p, q)`` applies ``p`` first, then ``q``.  This
matches right cosets and the right action used by Schreier graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Apply ``p`` then ``q``."""
    return tuple(q[x] for x in p)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def power(p: Sequence[int], k: int) -> Perm:
    n = len(p)
    if k < 0:
        p = inverse(p)
        k = -k
    result = list(range(n))
    for i in range(n):
        x = i
        for _ in range(k):
            x = p[x]
        result[i] = x
    return tuple(result)


def is_permutation(p: Sequence[int], n: int | None = None) -> bool:
    if n is None:
        n = len(p)
    return len(p) == n and sorted(p) == list(range(n))


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``p``, each starting at its least element."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        x = i
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Cycle lengths, sorted decreasingly (a partition of ``len(p)``)."""
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def order(p: Sequence[int]) -> int:
    from math import lcm

    result = 1
    for c in cycles(p):
        result = lcm(result, len(c))
    return result


def from_cycles(n: int, cyc: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation of degree ``n`` from disjoint cycles."""
    img = list(range(n))
    for c in cyc:
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            img[a] = b
    if not is_permutation(img):
        raise ValueError(f"cycles {cyc!r} are not disjoint")
    return tuple(img)


def commutes(p: Sequence[int], q: Sequence[int]) -> bool:
    return all(q[p[i]] == p[q[i]] for i in range(len(p)))


def closure(generators: Iterable[Sequence[int]], degree: int, cap: int | None = None) -> set[Perm]:
    """All products of the generators, identity included.

    Raises ``OverflowError`` once more than ``cap`` elements are found.
    """
    gens = [tuple(g) for g in generators]
    ident = identity(degree)
    elements = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for s in gens:
                b = compose(a, s)
                if b not in elements:
                    elements.add(b)
                    new.append(b)
                    if cap is not None and len(elements) > cap:
                        raise OverflowError(f"closure exceeds {cap} elements")
        frontier = new
    return elements


@dataclass(frozen=True)
class PermutationGroup:
    """A group of permutations of ``range(degree)``.

    ``elements`` is the materialized closure when known; ``generators`` is a
    (not necessarily minimal) generating list.
    """

    degree: int
    generators: tuple[Perm, ...]
    elements: frozenset[Perm] | None = field(default=None, compare=False)

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Sequence[int]]) -> "PermutationGroup":
        elems = frozenset(tuple(e) for e in elements)
        elems = elems | {identity(degree)}
        gens: list[Perm] = []
        span = {identity(degree)}
        for e in sorted(elems):
            if e not in span:
                gens.append(e)
                span = closure(gens, degree)
        if span != elems:
            raise ValueError("element set is not closed under composition")
        return cls(degree, tuple(gens), elems)

    def materialize(self) -> frozenset[Perm]:
        if self.elements is not None:
            return self.elements
        return frozenset(closure(self.generators, self.degree))

    @property
    def order(self) -> int:
        return len(self.materialize())

    def __contains__(self, p) -> bool:
        return tuple(p) in self.materialize()

    def is_trivial(self) -> bool:
        return self.order == 1
