import random

import pytest

from _support import random_schreier, realization
from freetelescope import groups as grp
from freetelescope.graph import automorphisms
from freetelescope.oracle import (
    OracleCapError,
    canonical_code,
    centralizer_aut,
    enumerate_subgroups,
    find_class,
    group_type_name,
    quotient_histogram,
)


def test_centralizer_modes_agree_on_small_graphs():
    rng = random.Random(3)
    for _ in range(30):
        g = random_schreier(rng, (2, 2, 2), rng.choice([2, 4, 6, 8]))
        if g is None:
            continue
        a = centralizer_aut(g, "factorial").materialize()
        b = centralizer_aut(g, "candidates").materialize()
        assert a == b == automorphisms(g).materialize()


def test_factorial_cap():
    g = realization("Z2", "3,2").schreier
    assert g.n > 12
    with pytest.raises(OracleCapError):
        centralizer_aut(g, "factorial")
    assert centralizer_aut(g).order == 2


def test_enumeration_examples():
    classes = enumerate_subgroups("2,2,2", 2)
    assert len(classes) == 7
    assert sum(c.is_free for c in classes) == 1
    assert quotient_histogram("2,2,2", 4) == {"klein4": 4}
    assert quotient_histogram("3,2", 6) == {"S3": 1, "Z2": 1, "Z6": 1}


def test_infinite_cyclic_has_one_subgroup_per_index():
    for d in (1, 3, 5):
        classes = enumerate_subgroups("inf", d)
        assert len(classes) == 1
        assert classes[0].based_count == 1
        assert classes[0].aut_order == d


def test_based_counts_match_orbit_stabilizer():
    for c in enumerate_subgroups("inf,inf", 3):
        assert c.based_count * c.aut_order == c.index


def test_cap_enforced():
    with pytest.raises(OracleCapError):
        enumerate_subgroups("3,2", 12)


def test_find_class_locates_pipeline_output():
    g = realization("trivial", "3,2").schreier
    classes = enumerate_subgroups("3,2", g.n, cap=12, free_only=True)
    c = find_class(classes, g)
    assert c is not None and c.is_free and c.aut_order == 1


def test_canonical_code_is_relabelling_invariant():
    perms = [(1, 2, 0, 4, 5, 3), (3, 4, 5, 0, 1, 2)]
    swap = [2, 0, 1, 5, 3, 4]
    moved = [tuple(swap[p[swap.index(v)]] for v in range(6)) for p in perms]
    assert canonical_code(perms) == canonical_code(moved)


def test_group_type_names():
    assert group_type_name(grp.preset("S3")) == "S3"
    assert group_type_name(grp.cyclic(6)) == "Z6"
    assert group_type_name(grp.dihedral(5)) == "D5"
