import pytest

from freetelescope.graph import GraphError, automorphisms, glue, isomorphic, validate
from freetelescope.links import (
    BASE_222_PERMS,
    BASE_222_SPLIT,
    base_graph_222,
    base_signature,
    edge_link,
    links_for,
    p_vertices,
    product_graph,
    search_base_graph_222,
    vertex_id,
    vertex_link,
)

PQ = [(p, q) for p in (3, 4, 5, 7) for q in (2, 3, 4)]


@pytest.mark.parametrize("p,q", PQ)
def test_product_graph_double_edges(p, q):
    g = product_graph(p, q)
    rep = validate(g)
    assert rep.is_free and rep.index == p * q
    assert p_vertices(g) == [vertex_id(p, 0, 0), vertex_id(p, 0, q - 1)]
    # only q = 2 has the swap of the two red cycles
    assert automorphisms(g).order == (2 if q == 2 else 1)


@pytest.mark.parametrize("p,q", PQ)
def test_edge_link_has_single_root(p, q):
    e = edge_link(p, q)
    assert e.graph.n == p * q + 1
    assert p_vertices(e.graph) == [e.root] == [vertex_id(p, 0, q - 1)]
    assert e.graph.colour_names(e.plus) == ["c"]
    assert e.graph.colour_names(e.minus) == ["r"]
    assert isomorphic(glue(e.graph, e.plus, e.minus), product_graph(p, q).with_basepoint(None))


@pytest.mark.parametrize("p,q", PQ)
def test_vertex_link_has_no_root_and_four_danglers(p, q):
    v = vertex_link(p, q)
    assert v.graph.n == p * q + 2
    assert p_vertices(v.graph) == []
    assert len(v.danglers) == 4
    assert v.graph.colour_names(v.plus) == ["r"]
    assert v.graph.colour_names(v.u_minus) == ["c"]


def test_frozen_222_graph_matches_search():
    found = search_base_graph_222(limit=1)
    assert found == [(BASE_222_PERMS, BASE_222_SPLIT)]


def test_222_links():
    g = base_graph_222()
    assert validate(g).is_free and g.n == 8
    e, v = links_for((2, 2, 2))
    assert p_vertices(e.graph) == [e.root] == [1]
    assert p_vertices(v.graph) == []
    assert e.graph.colour_names(e.plus) == ["g"]
    assert sorted(e.graph.colour_names(e.minus)) == ["b", "r"]
    assert v.graph.colour_names(v.u_minus) == ["g"]


def test_base_signature_rejects_non_base():
    for bad in [(2, 3), (2, 2), (3, 2, 2), (float("inf"), 3)]:
        with pytest.raises(GraphError):
            base_signature(bad)
    assert base_signature((3, 2)).orders == (3, 2)
