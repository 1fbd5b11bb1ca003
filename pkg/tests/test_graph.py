import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import random_schreier
from freetelescope import perms as P
from freetelescope.graph import (
    INF,
    DanglingVertex,
    FreeProductSignature,
    GraphError,
    LabelledDigraph,
    automorphisms,
    find_embeddings,
    follow_word,
    from_permutations,
    glue,
    glue_pairs,
    isomorphic,
    label_cycles,
    relabel,
    split_vertex,
    unique_morphism,
    validate,
    word,
)
from freetelescope.io import graph_from_json, graph_to_json, to_dot
from freetelescope.links import edge_link, product_graph, vertex_id
from freetelescope.oracle import centralizer_aut


def test_signature_parse_and_json():
    sig = FreeProductSignature.parse("3, inf,2")
    assert sig.orders == (3, INF, 2)
    assert str(sig) == "3,inf,2"
    assert sig.to_json() == [3, "inf", 2]
    assert FreeProductSignature.parse("2,2").is_infinite_dihedral
    with pytest.raises(GraphError):
        FreeProductSignature((1, 3))
    with pytest.raises(GraphError):
        FreeProductSignature(())


def test_injectivity_enforced():
    with pytest.raises(GraphError):
        LabelledDigraph(FreeProductSignature((3,)), [[1, 1, None]], ("r",))


def test_follow_word_examples():
    g = product_graph(3, 2)
    assert follow_word(g, vertex_id(3, 0, 1), ["r"]) == vertex_id(3, 1, 1)
    assert follow_word(g, 4, []) == 4
    link = edge_link(3, 2)
    assert follow_word(link.graph, link.plus.vertex, ["r"]) is None
    assert follow_word(link.graph, link.minus.vertex, ["c"]) is None


def test_follow_word_inverse_steps():
    g = product_graph(4, 3)
    for v in range(g.n):
        assert follow_word(g, v, ["r", "r-"]) == v
        assert follow_word(g, v, [("c", 1), ("c", -1)]) == v
        assert follow_word(g, v, ["c^-1"]) == g.pred[1][v]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.sampled_from(["r", "c", "r-", "c-"]), max_size=8),
       st.lists(st.sampled_from(["r", "c", "r-", "c-"]), max_size=8))
def test_follow_word_concatenation(seed, w1, w2):
    g = product_graph(3, 3)
    v = random.Random(seed).randrange(g.n)
    mid = follow_word(g, v, w1)
    assert follow_word(g, v, w1 + w2) == follow_word(g, mid, w2)


def test_validate_examples():
    rep = validate(product_graph(3, 2))
    assert rep.is_schreier and rep.is_free and rep.index == 6
    loop = LabelledDigraph(FreeProductSignature((3, 2)), [[0], [0]], ("r", "c"))
    rep = validate(loop)
    assert not rep.is_free
    assert ("r", 1, 0) in rep.degenerate_cycles
    rng = random.Random(5)
    g = random_schreier(rng, (INF, INF), 7)
    assert validate(g).is_free


def test_validate_flags_bad_cycle_length():
    g = from_permutations([(1, 2, 3, 0)], FreeProductSignature((3,)))
    rep = validate(g)
    assert not rep.is_schreier and not rep.is_free
    assert rep.bad_cycles


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_free_means_full_cycles(seed):
    rng = random.Random(seed)
    orders = rng.choice([(3, 2), (2, 2, 2), (4, 2), (3, 3)])
    g = random_schreier(rng, orders, rng.choice([6, 12]))
    if g is None:
        return
    rep = validate(g)
    full = all(len(c) == p for i, p in enumerate(orders) for c in P.cycles(g.succ[i]))
    assert rep.is_free == full


def test_unique_morphism_examples():
    g = product_graph(3, 2)
    assert unique_morphism(g, 0, g, 0) == tuple(range(6))
    link = edge_link(3, 2)
    for u in range(g.n):
        if u not in (vertex_id(3, 0, 0), vertex_id(3, 0, 1)):
            assert unique_morphism(link.graph, link.root, g, u) is None
    path = LabelledDigraph(g.signature, [[1, None], [None, None]], g.labels)
    for u in range(g.n):
        assert unique_morphism(path, 0, g, u) is not None


def test_find_embeddings_examples():
    g = product_graph(3, 2)
    point = LabelledDigraph(g.signature, [[None], [None]], g.labels)
    assert len(find_embeddings(point, g)) == g.n
    assert find_embeddings(product_graph(4, 4), product_graph(3, 2)) == []


def test_automorphisms_cayley_cycle():
    g = from_permutations([(1, 2, 0)], FreeProductSignature((3,)))
    A = automorphisms(g)
    assert A.order == 3
    assert A.materialize() == centralizer_aut(g).materialize()


def test_isomorphic_examples():
    g = product_graph(3, 2)
    perm = [5, 3, 1, 0, 2, 4]
    assert isomorphic(g, relabel(g, perm))
    assert not isomorphic(g, product_graph(4, 4))


def test_split_three_label_vertex():
    # a regular 3-label vertex split along {r, b}
    sig = FreeProductSignature((2, 2, 2))
    g = from_permutations([(1, 0), (1, 0), (1, 0)], sig, ("r", "g", "b"))
    h, d_rb, d_g = split_vertex(g, 0, ["r", "b"])
    assert h.colour_names(d_rb) == ["r", "b"] and h.colour_names(d_g) == ["g"]
    assert h.succ[1][d_rb.vertex] is None and h.pred[1][d_rb.vertex] is None
    assert h.succ[0][d_g.vertex] is None and h.succ[2][d_g.vertex] is None
    assert h.succ[1][d_g.vertex] == 1


def test_split_rejects_trivial_subsets():
    g = product_graph(3, 2)
    with pytest.raises(GraphError):
        split_vertex(g, 0, [])
    with pytest.raises(GraphError):
        split_vertex(g, 0, ["r", "c"])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_split_then_glue_is_identity(seed):
    rng = random.Random(seed)
    orders = rng.choice([(3, 2), (2, 2, 2), (4, 3), (INF, INF)])
    g = random_schreier(rng, orders, rng.randint(2, 12))
    if g is None:
        return
    v = rng.randrange(g.n)
    k = len(orders)
    ys = [i for i in range(k) if rng.random() < 0.5] or [0]
    if len(ys) == k:
        ys = ys[:-1]
    h, a, b = split_vertex(g.with_basepoint(None), v, ys)
    back = glue(h, a, b)
    assert not back.dangling
    assert isomorphic(back, g.with_basepoint(None))
    assert validate(back).is_free == validate(g).is_free


def test_glue_examples():
    link = edge_link(3, 2)
    assert isomorphic(glue(link.graph, link.plus, link.minus), product_graph(3, 2).with_basepoint(None))
    from freetelescope.graph import disjoint_union

    union, offs = disjoint_union([link.graph, link.graph])
    chained = glue(union, link.plus.vertex, link.minus.vertex + offs[1])
    assert chained.n == 2 * link.graph.n - 1 and len(chained.dangling) == 2
    with pytest.raises(GraphError):
        glue(union, link.plus.vertex, link.plus.vertex + offs[1])
    with pytest.raises(GraphError):
        glue(link.graph, link.plus.vertex, link.plus.vertex)


def test_glue_rejects_double_use():
    link = edge_link(3, 2)
    with pytest.raises(GraphError):
        glue_pairs(link.graph, [(link.plus, link.minus), (link.plus, link.minus)])


def test_cycle_lengths_unchanged_by_glue():
    link = edge_link(4, 3)
    g = glue(link.graph, link.plus, link.minus)
    for i in range(2):
        assert sorted(map(len, label_cycles(g, i))) == [g.signature.orders[i]] * (g.n // g.signature.orders[i])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_aut_order_divides_index_and_matches_oracle(seed):
    rng = random.Random(seed)
    orders = rng.choice([(3, 2), (2, 2, 2), (INF, 2), (INF, INF), (4, 2)])
    g = random_schreier(rng, orders, rng.randint(1, 14))
    if g is None:
        return
    A = automorphisms(g)
    assert g.n % A.order == 0
    assert A.materialize() == centralizer_aut(g).materialize()


def test_isomorphism_invariance_of_reports():
    rng = random.Random(11)
    for _ in range(20):
        g = random_schreier(rng, (3, 2), 12)
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = relabel(g, perm)
        assert isomorphic(g, h) and isomorphic(h, g)
        a, b = validate(g), validate(h)
        assert (a.is_schreier, a.is_free, a.index) == (b.is_schreier, b.is_free, b.index)
        assert len(a.degenerate_cycles) == len(b.degenerate_cycles)


def test_json_round_trip_and_dot():
    link = edge_link(3, 2)
    data = graph_to_json(link.graph)
    assert data["dangling"][0]["colours"] == ["c"]
    assert graph_from_json(data) == link.graph
    g = from_permutations([(1, 0), (1, 0)], FreeProductSignature((INF, 2)))
    data = graph_to_json(g)
    assert data["signature"] == ["inf", 2]
    assert graph_from_json(data) == g
    dot = to_dot(g)
    assert "dir=none" in dot and "peripheries=2" in dot


def test_graph_from_json_rejects_garbage():
    with pytest.raises(GraphError):
        graph_from_json({"signature": [3], "labels": ["r"], "n": 2, "succ": [[0, 0]]})
    with pytest.raises(GraphError):
        graph_from_json({"labels": ["r"]})


def test_word_helper():
    g = product_graph(3, 2)
    assert word(g, "rc") == [(0, 1), (1, 1)]
    assert DanglingVertex(0, frozenset({1})).colours == frozenset({1})
