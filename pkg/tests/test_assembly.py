import pytest

from freetelescope import groups as grp
from freetelescope.assembly import (
    CertificationError,
    build_edge_graph,
    build_vertex_graph,
    check_S1,
    check_S2,
    edge_link_count,
    realize_base,
    substitute,
)
from freetelescope.graph import automorphisms, validate
from freetelescope.links import p_vertices

BASES = [(3, 2), (4, 4), (5, 3), (2, 2, 2)]


@pytest.mark.parametrize("sig", BASES)
def test_vertex_graph_has_no_roots_and_rigid_boundary(sig):
    for k in (1, 2, 3):
        V = build_vertex_graph(sig, k)
        assert p_vertices(V.graph) == []
        assert check_S1(V)
        assert len(V.boundary) == 2 * k


@pytest.mark.parametrize("sig", BASES)
def test_edge_graph_roots(sig):
    for length in (1, 2, 3):
        E = build_edge_graph(sig, length)
        assert len(E.roots) == length
        assert sorted(p_vertices(E.graph)) == sorted(E.roots)
        assert len(E.graph.dangling) == 2


@pytest.mark.parametrize("sig", [(3, 2), (2, 2, 2), (4, 3)])
def test_S2_fails_with_swapped_edge_lengths(sig):
    C = grp.cayley_graph(grp.preset("klein4"))
    V = build_vertex_graph(sig, 2)
    good = [build_edge_graph(sig, 1), build_edge_graph(sig, 2)]
    swapped = [build_edge_graph(sig, 2), build_edge_graph(sig, 1)]
    assert check_S2(*substitute(C, V, good))
    assert not check_S2(*substitute(C, V, swapped))


@pytest.mark.parametrize("name", ["trivial", "Z2", "Z3", "klein4", "S3", "Q8", "D4", "A4"])
@pytest.mark.parametrize("sig", BASES)
def test_realize_base_certifies(name, sig):
    G = grp.preset(name)
    R = realize_base(G, sig)
    assert R.certified
    assert validate(R.schreier).is_free
    assert R.aut.order == G.order
    assert grp.groups_isomorphic(grp.group_from_permutation_group(R.aut), G)
    acc = R.certificate["accounting"]
    assert acc["edge_links"] == edge_link_count(G)
    assert R.index % G.order == 0


def test_index_examples():
    assert realize_base(grp.preset("S3"), (3, 2)).index == 180
    assert realize_base(grp.preset("trivial"), (3, 2)).index == 12


def test_certificate_json_omits_timings_by_default():
    R = realize_base(grp.preset("Z2"), (3, 2))
    assert "timings" not in R.to_json()["certificate"]
    assert "timings" in R.to_json(timings=True)["certificate"]
    names = [c["name"] for c in R.certificate["checks"]]
    assert names[:2] == ["S.1", "S.2"]


def test_fast_mode_skips_S2_only():
    R = realize_base(grp.preset("S3"), (2, 2, 2), fast=True)
    s2 = [c for c in R.certificate["checks"] if c["name"] == "S.2"]
    assert s2 and s2[0].get("skipped")
    assert automorphisms(R.schreier).order == 6


def test_certification_error_carries_check_name():
    err = CertificationError("S.1", "boom")
    assert "S.1" in str(err)
