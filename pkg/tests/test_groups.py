import json

import pytest

from freetelescope import groups as grp
from freetelescope.graph import INF, automorphisms, validate


@pytest.mark.parametrize("name,order", [
    ("trivial", 1), ("Z2", 2), ("Z5", 5), ("klein4", 4), ("S3", 6), ("D4", 8), ("Q8", 8), ("A4", 12), ("Z8", 8),
])
def test_presets_have_expected_order(name, order):
    assert grp.preset(name).order == order


def test_preset_prefix_and_unknown():
    assert grp.preset("preset:S3").order == 6
    assert grp.load_group("preset:D4").order == 8
    with pytest.raises(grp.GroupError):
        grp.preset("Monster")


def test_non_isomorphic_presets_of_order_eight():
    names = ["Z8", "D4", "Q8"]
    for a in names:
        for b in names:
            assert grp.groups_isomorphic(grp.preset(a), grp.preset(b)) == (a == b)
    assert grp.groups_isomorphic(grp.preset("S3"), grp.dihedral(3))
    assert not grp.groups_isomorphic(grp.preset("klein4"), grp.preset("Z4"))


def test_table_validation():
    with pytest.raises(grp.GroupError):
        grp.FiniteGroup([[0, 1], [1, 1]], (1,))
    with pytest.raises(grp.GroupError):
        grp.FiniteGroup([[0, 1], [1, 0]], (1,), generator_names=("a", "a2"))


def test_json_round_trip(tmp_path):
    for name in ("Q8", "klein4", "trivial"):
        G = grp.preset(name)
        H = grp.group_from_json(json.loads(json.dumps(G.to_json())))
        assert H.order == G.order and grp.groups_isomorphic(G, H)
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"perms": [[1, 2, 0], [1, 0, 2]]}))
    assert grp.load_group(str(path)).order == 6
    with pytest.raises(grp.GroupError):
        grp.group_from_json({"nothing": 1})


@pytest.mark.parametrize("name", grp.PRESETS)
def test_cayley_graph_aut_is_the_group(name):
    G = grp.preset(name)
    C = grp.cayley_graph(G)
    rep = validate(C)
    assert rep.is_free and rep.index == G.order
    A = automorphisms(C)
    assert A.order == G.order
    assert grp.groups_isomorphic(grp.group_from_permutation_group(A), G)


def test_cayley_trivial_uses_infinite_label():
    C = grp.cayley_graph(grp.preset("trivial"))
    assert C.signature.orders == (INF,)
    assert validate(C).is_free


def test_closure_cap():
    big = [tuple(range(1, 9)) + (0,), (1, 0) + tuple(range(2, 9))]
    with pytest.raises(grp.GroupError):
        grp.group_from_permutations(big, cap=100)
