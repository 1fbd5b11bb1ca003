"""Shared generators for tests: random Schreier graphs and cached realizations."""

from __future__ import annotations

import random
from functools import lru_cache

from freetelescope import groups as grp
from freetelescope.factors import realize
from freetelescope.graph import INF, FreeProductSignature, LabelledDigraph, is_connected


def random_cycle_perm(rng: random.Random, d: int, p, free: bool) -> tuple:
    """Random permutation of ``range(d)`` with cycle lengths dividing ``p``
    (exactly ``p`` when ``free``; anything for infinite ``p``)."""
    pts = list(range(d))
    rng.shuffle(pts)
    img = list(range(d))
    k = 0
    while k < d:
        left = d - k
        if p == INF:
            length = rng.randint(1, left)
        elif free:
            length = p
        else:
            length = rng.choice([m for m in range(1, p + 1) if p % m == 0 and m <= left])
        cyc = pts[k:k + length]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
        k += length
    return tuple(img)


def random_schreier(rng: random.Random, orders, d: int, free: bool = False, tries: int = 200):
    """A random connected regular graph of degree ``d``, or ``None``."""
    sig = FreeProductSignature(tuple(orders))
    if free and any(p != INF and d % p for p in sig.orders):
        return None
    for _ in range(tries):
        perms = [random_cycle_perm(rng, d, p, free) for p in sig.orders]
        g = LabelledDigraph(sig, perms, sig.default_labels(), basepoint=0)
        if is_connected(g):
            return g
    return None


@lru_cache(maxsize=None)
def realization(group: str, product: str, fast: bool = False):
    return realize(grp.preset(group), product, fast=fast)


# "criterion N: PASS|FAIL ..." lines, echoed in the pytest terminal summary
ACCEPTANCE: list[str] = []


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok
