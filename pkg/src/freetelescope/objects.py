"""Maps, hypermaps, pavings and constellations read off Schreier graphs.

Darts are Schreier-graph vertices.  Products follow the package convention
(left to right: ``compose(a, b)`` is ``a`` then ``b``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    INF,
    FreeProductSignature,
    GraphError,
    LabelledDigraph,
    automorphisms,
    based_isomorphic,
    is_connected,
    isomorphic,
    validate,
)
from .perms import PermutationGroup, compose, cycle_type, cycles, identity, inverse, is_permutation


class ObjectError(ValueError):
    pass


def _perm_graph(perms, names, orders=None) -> LabelledDigraph:
    orders = orders or (INF,) * len(perms)
    return LabelledDigraph(FreeProductSignature(tuple(orders)), [tuple(p) for p in perms], tuple(names), basepoint=0)


def _transitive(n, perms) -> bool:
    return n == 0 or is_connected(_perm_graph(perms, [f"p{i}" for i in range(len(perms))]))


def _fpf_involution(p) -> bool:
    return all(p[p[i]] == i and p[i] != i for i in range(len(p)))


@dataclass(frozen=True)
class Hypermap:
    n: int
    R: tuple
    L: tuple

    @property
    def kind(self) -> str:
        return "map" if _fpf_involution(self.L) else "hypermap"

    @property
    def perms(self) -> dict:
        return {"R": self.R, "L": self.L}

    def violations(self) -> list[str]:
        out = []
        if not (is_permutation(self.R, self.n) and is_permutation(self.L, self.n)):
            return ["not permutations"]
        if not _transitive(self.n, (self.R, self.L)):
            out.append("not transitive")
        return out

    def is_pq(self, p, q) -> bool:
        return set(map(len, cycles(self.R))) <= {p} and set(map(len, cycles(self.L))) <= {q}


@dataclass(frozen=True)
class Paving:
    n: int
    R: tuple
    L: tuple
    V: tuple

    kind = "paving"

    @property
    def perms(self) -> dict:
        return {"R": self.R, "L": self.L, "V": self.V}

    def violations(self) -> list[str]:
        out = []
        if not all(is_permutation(p, self.n) for p in (self.R, self.L, self.V)):
            return ["not permutations"]
        if not _fpf_involution(compose(self.L, self.V)):
            out.append("LV is not a fixed-point-free involution")
        if not _fpf_involution(compose(self.V, inverse(self.R))):
            out.append("VR^-1 is not a fixed-point-free involution")
        if not _transitive(self.n, (self.R, self.L, self.V)):
            out.append("not transitive")
        return out


@dataclass(frozen=True)
class Constellation:
    n: int
    g: tuple  # g_1 .. g_k

    kind = "constellation"

    @property
    def k(self) -> int:
        return len(self.g)

    @property
    def perms(self) -> dict:
        return {f"g{i + 1}": p for i, p in enumerate(self.g)}

    def violations(self) -> list[str]:
        out = []
        if not all(is_permutation(p, self.n) for p in self.g):
            return ["not permutations"]
        if self.k < 3:
            out.append("fewer than three permutations")
        prod = identity(self.n)
        for p in self.g:
            prod = compose(prod, p)
        if prod != identity(self.n):
            out.append("product is not the identity")
        if not _transitive(self.n, self.g):
            out.append("not transitive")
        return out


def is_valid(x) -> bool:
    return not x.violations()


# -- conversions -----------------------------------------------------------------


def _require_free(g: LabelledDigraph) -> None:
    rep = validate(g)
    if not rep.is_free:
        detail = rep.degenerate_cycles or rep.bad_cycles or "not a connected regular graph"
        raise ObjectError(f"input is not a free Schreier graph: {detail}")


def to_hypermap(g: LabelledDigraph) -> Hypermap:
    """``R`` and ``L`` are the two label permutations, in label order."""
    if len(g.labels) != 2:
        raise ObjectError(f"hypermaps need a two-letter signature, got ({g.signature})")
    _require_free(g)
    return Hypermap(g.n, tuple(g.succ[0]), tuple(g.succ[1]))


def to_paving(g: LabelledDigraph) -> Paving:
    """Labels read as ``(L, S, T)``; ``V = LS`` and ``R = TLS``."""
    if g.signature.orders != (2, 2, 2):
        raise ObjectError(f"pavings need signature (2,2,2), got ({g.signature})")
    _require_free(g)
    L, S, T = (tuple(r) for r in g.succ)
    V = compose(L, S)
    return Paving(g.n, compose(T, V), L, V)


def to_constellation(g: LabelledDigraph) -> Constellation:
    if len(g.labels) < 2 or any(p != INF for p in g.signature.orders):
        raise ObjectError(f"constellations need an all-infinite signature with >= 2 letters, got ({g.signature})")
    rep = validate(g)
    if not rep.is_schreier:
        raise ObjectError("input is not a connected regular graph")
    gs = [tuple(r) for r in g.succ]
    prod = identity(g.n)
    for p in gs:
        prod = compose(prod, p)
    return Constellation(g.n, tuple(gs) + (inverse(prod),))


def to_object(g: LabelledDigraph, kind: str):
    if kind in ("hypermap", "map"):
        h = to_hypermap(g)
        if kind == "map" and h.kind != "map":
            raise ObjectError("second label is not a fixed-point-free involution; not a map")
        return h
    if kind == "paving":
        return to_paving(g)
    if kind == "constellation":
        return to_constellation(g)
    raise ObjectError(f"unknown object kind {kind!r}")


def to_schreier(x, signature=None) -> LabelledDigraph:
    """The Schreier graph whose label permutations define ``x``."""
    if isinstance(x, Hypermap):
        perms, names = (x.R, x.L), ("r", "c")
    elif isinstance(x, Paving):
        perms, names = (x.L, compose(x.L, x.V), compose(x.V, inverse(x.R))), ("r", "g", "b")
    elif isinstance(x, Constellation):
        perms, names = x.g[:-1], tuple(f"x{i + 1}" for i in range(x.k - 1))
    else:
        raise ObjectError(f"not an object: {x!r}")
    sig = signature or FreeProductSignature((INF,) * len(perms))
    if not isinstance(sig, FreeProductSignature):
        sig = FreeProductSignature(tuple(sig))
    return _perm_graph(perms, names, sig.orders)


# -- invariants ------------------------------------------------------------------


def euler_genus(h: Hypermap) -> tuple[int, int | None]:
    """``(chi, genus)`` from orbit counts; genus is ``None`` if chi is odd or above 2."""
    if h.violations():
        raise ObjectError(f"invalid hypermap: {h.violations()}")
    c = lambda p: len(cycles(p))  # noqa: E731
    chi = c(h.R) + c(h.L) + c(compose(inverse(h.R), h.L)) - h.n
    if chi % 2 or chi > 2:
        return chi, None
    return chi, (2 - chi) // 2


def map_euler_characteristic(h: Hypermap) -> int:
    """``V - E + F`` for a map: vertices ``c(R)``, edges ``n/2``, faces ``c(R^-1 L)``."""
    if h.kind != "map":
        raise ObjectError("V - E + F needs a map")
    return len(cycles(h.R)) - h.n // 2 + len(cycles(compose(inverse(h.R), h.L)))


def object_automorphisms(x) -> PermutationGroup:
    """Dart permutations commuting with every defining permutation."""
    if x.violations():
        raise ObjectError(f"invalid {x.kind}: {x.violations()}")
    perms = list(x.perms.values())
    return automorphisms(_perm_graph(perms, [f"p{i}" for i in range(len(perms))]))


def passport(c: Constellation) -> list[list[int]]:
    return [list(cycle_type(p)) for p in c.g]


def objects_isomorphic(a, b, mode: str = "unrooted") -> bool:
    """``labelled``: identical data; ``rooted``: dart 0 to dart 0; ``unrooted``: any."""
    if type(a) is not type(b) or a.n != b.n:
        return False
    if mode == "labelled":
        return a.perms == b.perms
    ga = _perm_graph(list(a.perms.values()), list(a.perms))
    gb = _perm_graph(list(b.perms.values()), list(b.perms))
    if mode == "rooted":
        return based_isomorphic(ga, gb)
    if mode == "unrooted":
        return isomorphic(ga, gb)
    raise ObjectError(f"unknown isomorphism mode {mode!r}")


# -- JSON ------------------------------------------------------------------------


def object_to_json(x) -> dict:
    out = {"kind": x.kind, "n": x.n, "perms": {k: list(v) for k, v in x.perms.items()}}
    if isinstance(x, Hypermap):
        chi, genus = euler_genus(x)
        out["chi"], out["genus"] = chi, genus
    if isinstance(x, Constellation):
        out["passport"] = sorted(passport(x))
    return out


def object_from_json(data: dict):
    try:
        kind, n, perms = data["kind"], int(data["n"]), data["perms"]
        if kind in ("hypermap", "map"):
            return Hypermap(n, tuple(perms["R"]), tuple(perms["L"]))
        if kind == "paving":
            return Paving(n, tuple(perms["R"]), tuple(perms["L"]), tuple(perms["V"]))
        if kind == "constellation":
            return Constellation(n, tuple(tuple(perms[f"g{i + 1}"]) for i in range(len(perms))))
    except (KeyError, TypeError, ValueError) as exc:
        raise ObjectError(f"malformed object JSON: {exc}") from exc
    raise ObjectError(f"unknown object kind {kind!r}")


__all__ = [
    "Hypermap",
    "Paving",
    "Constellation",
    "ObjectError",
    "GraphError",
    "to_hypermap",
    "to_paving",
    "to_constellation",
    "to_object",
    "to_schreier",
    "euler_genus",
    "map_euler_characteristic",
    "object_automorphisms",
    "passport",
    "objects_isomorphic",
    "object_to_json",
    "object_from_json",
    "is_valid",
]
