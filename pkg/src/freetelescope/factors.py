"""Reduction of arbitrary free products of cyclic groups to a base case.

A plan rewrites the input signature forward (infinite factors get a finite
stand-in, then finite factors are merged into their lcm) until it reaches
``(p, q)`` with ``p >= 3`` or ``(2, 2, 2)``.  Realization runs the base case
and replays the plan backward, lifting the Schreier graph one step at a time:
a merged label splits into two powers of its permutation, and a stand-in
label simply has its order reset to infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import groups as grp
from .assembly import Certifier, Realization, certify_graph, realize_base
from .graph import INF, FreeProductSignature, GraphError, LabelledDigraph, automorphisms, validate
from .links import LinkGraph
from .perms import power

DEFAULT_STAND_IN = 3


class InfiniteDihedralError(GraphError):
    """``Z_2 * Z_2`` has no free finite-index subgroup with prescribed symmetry."""


@dataclass(frozen=True)
class CollapseZ:
    slot: int
    order: int

    def to_json(self) -> dict:
        return {"step": "collapse", "slot": self.slot, "order": self.order}


@dataclass(frozen=True)
class MergeLcm:
    """Slots ``i < j`` (orders ``a``, ``b``) are removed; a slot of order
    ``lcm(a, b)`` is appended."""

    i: int
    j: int
    a: int
    b: int
    order: int

    def to_json(self) -> dict:
        return {"step": "merge", "slots": [self.i, self.j], "orders": [self.a, self.b], "order": self.order}


@dataclass(frozen=True)
class ReductionPlan:
    source: FreeProductSignature
    steps: tuple
    pre_base: tuple  # slot orders after the last step, before sorting
    base_order: tuple  # base slot k is pre-base slot base_order[k]

    @property
    def base_signature(self) -> FreeProductSignature:
        return FreeProductSignature(tuple(self.pre_base[k] for k in self.base_order))

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "base": self.base_signature.to_json(),
        }


def plan_reduction(sig, stand_in: int = DEFAULT_STAND_IN) -> ReductionPlan:
    if not isinstance(sig, FreeProductSignature):
        sig = FreeProductSignature.parse(sig) if isinstance(sig, str) else FreeProductSignature(tuple(sig))
    if len(sig) < 2:
        raise GraphError("need a free product of at least two cyclic groups")
    if sig.is_infinite_dihedral:
        raise InfiniteDihedralError(
            "Z_2 * Z_2 (the infinite dihedral group) is excluded: it is not freely telescopic"
        )
    if stand_in < 3:
        raise GraphError("the stand-in order for infinite factors must be at least 3")
    slots = list(sig.orders)
    steps = []
    for i, p in enumerate(slots):
        if p == INF:
            steps.append(CollapseZ(i, stand_in))
            slots[i] = stand_in
    while len(slots) > 2 and slots != [2, 2, 2]:
        # two largest orders, ties broken by position
        i, j = sorted(sorted(range(len(slots)), key=lambda k: (-slots[k], k))[:2])
        a, b = slots[i], slots[j]
        m = math.lcm(a, b)
        steps.append(MergeLcm(i, j, a, b, m))
        slots = [x for k, x in enumerate(slots) if k not in (i, j)] + [m]
    base_order = tuple(sorted(range(len(slots)), key=lambda k: (-slots[k], k)))
    return ReductionPlan(sig, tuple(steps), tuple(slots), base_order)


# -- lifts ---------------------------------------------------------------------


def _require_free(g: LabelledDigraph, what: str) -> None:
    rep = validate(g)
    if not rep.is_free:
        raise GraphError(f"{what} needs a free Schreier graph; got {rep.to_json()}")


def lift_lcm(g: LabelledDigraph, label, a: int, b: int, names: tuple | None = None) -> LabelledDigraph:
    """Replace a ``Z_m`` label by ``Z_a`` and ``Z_b`` labels (``lcm(a, b) = m``).

    The new labels sit where the old one was, ``a`` first, with permutations
    ``pi^(m/a)`` and ``pi^(m/b)``.
    """
    i = g.label_index(label)
    m = g.signature.orders[i]
    if m == INF or math.lcm(a, b) != m:
        raise GraphError(f"lcm({a}, {b}) does not match the label order {m}")
    _require_free(g, "lift_lcm")
    pi = g.succ[i]
    name = g.labels[i]
    names = names or (f"{name}.a", f"{name}.b")
    succ = list(g.succ[:i]) + [power(pi, m // a), power(pi, m // b)] + list(g.succ[i + 1:])
    orders = g.signature.orders[:i] + (a, b) + g.signature.orders[i + 1:]
    labels = g.labels[:i] + tuple(names) + g.labels[i + 1:]
    return LabelledDigraph(FreeProductSignature(orders), succ, labels, g.basepoint)


def lift_Z(g: LabelledDigraph, label) -> LabelledDigraph:
    """Declare a finite-order label to have infinite order."""
    i = g.label_index(label)
    _require_free(g, "lift_Z")
    orders = list(g.signature.orders)
    orders[i] = INF
    return g.replace(signature=FreeProductSignature(tuple(orders)))


def permute_labels(g: LabelledDigraph, order, names=None) -> LabelledDigraph:
    """New label ``k`` is old label ``order[k]``."""
    return LabelledDigraph(
        FreeProductSignature(tuple(g.signature.orders[k] for k in order)),
        [g.succ[k] for k in order],
        tuple(names) if names else tuple(g.labels[k] for k in order),
        g.basepoint,
    )


# -- driver ----------------------------------------------------------------------


def realize(
    G: grp.FiniteGroup,
    sig,
    fast: bool = False,
    stand_in: int = DEFAULT_STAND_IN,
    edge_link: LinkGraph | None = None,
) -> Realization:
    """Certified realization of ``G`` over any allowed free product of cyclic groups."""
    plan = plan_reduction(sig, stand_in)
    src = plan.source
    base = realize_base(G, plan.base_signature, fast=fast, edge_link=edge_link)
    cert = Certifier()
    cert.checks = list(base.certificate["checks"])
    cert.timings = dict(base.certificate["timings"])
    n = base.schreier.n

    # back to pre-base slot order; slot names are indices into the source
    inv = [0] * len(plan.base_order)
    for k, s in enumerate(plan.base_order):
        inv[s] = k
    g = permute_labels(base.schreier, inv, [f"_{k}" for k in range(len(inv))])
    aut = base.aut
    for step in reversed(plan.steps):
        prev_aut = aut
        if isinstance(step, MergeLcm):
            last = len(g.labels) - 1
            g = lift_lcm(g, last, step.a, step.b, ("_a", "_b"))
            # move the two new labels into slots i and j
            k = len(g.labels)
            rest = list(range(k - 2))
            order = []
            for slot in range(k):
                if slot == step.i:
                    order.append(k - 2)
                elif slot == step.j:
                    order.append(k - 1)
                else:
                    order.append(rest.pop(0))
            g = permute_labels(g, order, [f"_{s}" for s in range(k)])
            tag = f"merge {step.a},{step.b}->{step.order}"
        else:
            g = lift_Z(g, step.slot)
            tag = f"collapse inf->{step.order}"
        cert.run(f"index preserved [{tag}]", lambda: g.n == n)
        aut = certify_graph(cert, g, G, tag)
        cert.run(
            f"aut unchanged [{tag}]",
            lambda: aut.materialize() == prev_aut.materialize(),
        )
    final = g.replace(labels=src.default_labels())
    if final.signature != src:
        raise GraphError(f"plan replay produced ({final.signature}), expected ({src})")
    accounting = dict(base.certificate["accounting"])
    certificate = cert.as_dict(signature=src.to_json(), accounting=accounting, plan=plan.to_json())
    return Realization(final, G, src, aut, certificate, base.assembly)
