from fractions import Fraction
from math import factorial
from itertools import combinations

import pytest

from freetelescope import groups as grp
from freetelescope.census import (
    achievable_index,
    build_census_base,
    build_census_base_222,
    census,
    completion,
    extend,
    legal_orderings,
    lower_bound,
    normal_form,
    ordering_classes,
    splice_and_realize,
)
from freetelescope.graph import GraphError, is_connected, isomorphic, validate
from freetelescope.links import p_vertices


def test_lower_bound_examples():
    assert lower_bound(8, 2) == Fraction(15, 8)
    assert lower_bound(4, 2) == Fraction(1, 4)
    assert lower_bound(9, 3) == Fraction(5040, 162)
    with pytest.raises(GraphError):
        lower_bound(7, 2)
    with pytest.raises(GraphError):
        lower_bound(6, 1)


@pytest.mark.parametrize("p,q,N", [(3, 2, 12), (3, 2, 18), (3, 3, 18), (4, 2, 16), (5, 2, 20)])
def test_base_shape(p, q, N):
    base = build_census_base(p, q, N)
    g = base.graph
    assert is_connected(g)
    assert base.F % q == 0 and base.D == base.F
    assert p_vertices(g) == [0]
    assert all(g.succ[1][v] is None for v in base.free)
    assert all(g.succ[1][v] is not None for v in range(N) if v not in base.free)


def test_base_rejects_bad_N():
    with pytest.raises(GraphError):
        build_census_base(3, 2, 10)
    with pytest.raises(GraphError):
        build_census_base_222(12)


def test_222_base_shape():
    base = build_census_base_222(8)
    g = base.graph
    assert base.F == 6 and is_connected(g)
    assert p_vertices(g) == []  # blue only at v0, v7: the root word cannot close yet
    assert g.succ[2][0] == 7 and g.succ[1][0] == 7


def test_orderings_are_legal_and_complete():
    base = build_census_base(3, 2, 18)
    orders = list(legal_orderings(base))
    assert orders
    for sigma in orders:
        full = completion(base, sigma)
        assert full[: len(sigma)] == sigma
        h = extend(base, sigma)
        assert validate(h).is_free
        assert p_vertices(h) == [0]


def test_completion_rejects_illegal_prefix():
    base = build_census_base(3, 2, 12)
    v = base.free[0]
    clash_partner = base.graph.succ[base.clash][v]
    if clash_partner in base.free:
        assert completion(base, (v, clash_partner)) is None
    assert completion(base, (v, v)) is None
    assert completion(base, (-1,)) is None


def test_normal_form_ignores_rotation_and_block_order():
    assert normal_form(3, (5, 1, 4, 2, 9, 0)) == normal_form(3, (0, 2, 9, 1, 4, 5))
    assert normal_form(2, (1, 2, 3, 4)) != normal_form(2, (1, 3, 2, 4))


@pytest.mark.parametrize("sig,N,expected", [((3, 2), 12, 1), ((3, 2), 18, 7), ((2, 2, 2), 8, 7)])
def test_dedup_matches_pairwise_isomorphism(sig, N, expected):
    base, entries = census(sig, N)
    assert len(entries) == expected
    for a, b in combinations(entries, 2):
        assert not isomorphic(a.graph, b.graph)


def test_class_members_give_isomorphic_graphs():
    base = build_census_base(3, 2, 18)
    groups = {}
    for sigma in legal_orderings(base):
        groups.setdefault(normal_form(2, completion(base, sigma)), []).append(sigma)
    for members in groups.values():
        first = extend(base, members[0])
        for other in members[1:4]:
            assert extend(base, other) == first


def test_limit_and_stats():
    base = build_census_base(3, 2, 18)
    stats = {}
    out = list(legal_orderings(base, limit=3, stats=stats))
    assert len(out) == 3
    assert stats["dropped"] >= 0


@pytest.mark.parametrize("sig,N", [((3, 2), 12), ((3, 2), 18), ((2, 2, 2), 8)])
def test_splice_family_is_pairwise_non_isomorphic(sig, N):
    G = grp.preset("Z2")
    base, entries = census(sig, N)
    Rs = [splice_and_realize(G, sig, N, e.sigma, fast=True) for e in entries]
    assert len({R.index for R in Rs}) == 1
    for R in Rs:
        assert R.certified and R.aut.order == 2
        acc = R.certificate["accounting"]
        assert R.index == acc["v_gamma"] + acc["e_gamma"] * N
    for a, b in combinations(Rs, 2):
        assert not isomorphic(a.schreier, b.schreier)


@pytest.mark.parametrize("p,q", [(3, 2), (3, 3), (4, 2), (5, 3)])
def test_free_count_at_least_quarter(p, q):
    for N in (4 * p * q, 8 * p * q):
        assert build_census_base(p, q, N).F >= N / 4


def test_lower_bound_monotone_past_small_D():
    for q in (2, 3, 4):
        vals = [lower_bound(D, q) for D in range(2 * q, 12 * q, q)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("N", [12, 18])
def test_full_legal_orderings_meet_raw_bound(N):
    base = build_census_base(3, 2, N)
    full = list(legal_orderings(base, length=base.D))
    assert len(full) >= factorial(base.D - 2) // factorial(base.block - 2)


@pytest.mark.parametrize("N", [12, 18])
def test_class_sizes_divide_block_group_order(N):
    base = build_census_base(3, 2, N)
    k = base.D // base.block
    order = factorial(k) * base.block**k
    for _, size in ordering_classes(base, legal_orderings(base)).values():
        assert order % size == 0


def test_empty_stream_when_nothing_to_order():
    base = build_census_base(3, 2, 6)
    assert base.D - base.block <= 0
    assert list(legal_orderings(base)) == []


def test_achievable_index_matches_splice():
    G = grp.preset("Z2")
    _, entries = census((3, 2), 18)
    R = splice_and_realize(G, (3, 2), 18, entries[0].sigma, fast=True)
    assert achievable_index(G, (3, 2), 18) == R.index == 60
    assert achievable_index(G, (3, 2), 36) - achievable_index(G, (3, 2), 18) == 2 * 18
