import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from bismash import catalog
from bismash.chars import character_table
from bismash.group import (PermGroup, ResourceCapError, close, conjugacy_classes,
                           group_fs_indicator, point_stabilizer, round_integral)
from bismash.perm import Permutation

P = Permutation.parse


def test_closure_orders():
    assert close([P("(1,2,3,4,5)"), P("(1,2)", 5)]).order == 120
    assert close([P("(1,2,3)", 5), P("(3,4,5)")]).order == 60
    assert close([], 4).order == 1


def test_cap():
    with pytest.raises(ResourceCapError):
        close([P("(1,2,3,4,5,6,7)"), P("(1,2)", 7)], cap=1000)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("BISMASH_CAP", "50")
    with pytest.raises(ResourceCapError):
        close([P("(1,2,3,4,5)"), P("(1,2)", 5)])


def test_elements_sorted_and_unique():
    G = catalog.symmetric(4)
    assert G.arrays == sorted(set(G.arrays))
    assert G.identity in G


def test_point_stabilizer():
    G = catalog.symmetric(5)
    H = point_stabilizer(G, [4, 5])
    assert H.order == 6 and all(p(4) == 4 and p(5) == 5 for p in H)


def test_conjugate_group():
    G = catalog.cyclic_regular(5)
    x = P("(1,2)", 5)
    H = G.conjugate(x)
    assert H.order == 5 and all(~x * g * x in H for g in G)


@pytest.mark.parametrize("make,count", [
    (lambda: catalog.symmetric(5), 7),
    (lambda: catalog.alternating(5), 5),
    (lambda: catalog.agl1(7), 7),
    (lambda: catalog.pgl2(5), 7),
    (lambda: catalog.cyclic_regular(6), 6),
])
def test_class_counts(make, count):
    G = make()
    classes = conjugacy_classes(G)
    assert len(classes) == count
    assert sum(c.size for c in classes) == G.order
    assert [(c.size, min(c.members)) for c in classes] == sorted((c.size, min(c.members))
                                                                 for c in classes)
    for c in classes:
        assert G.order % c.size == 0
        g = random.Random(0).choice(G.elements)
        assert (~g * c.representative * g).array in c.members


def test_symmetric_classes_on_partial_support():
    # cycle-type shortcut must agree with conjugation orbits
    G = catalog.symmetric_on(range(2, 6), 7)
    a = sorted((c.size, c.representative) for c in conjugacy_classes(G))
    H = PermGroup.from_arrays(G.arrays, 7)
    from bismash.group import _orbit_classes
    b = sorted((size, Permutation.from_array(rep)) for size, rep, _ in _orbit_classes(H))
    assert a == b


def test_group_fs_indicator_symmetric_all_one():
    G = catalog.symmetric(5)
    t = character_table(G)
    for i in range(t.count):
        assert group_fs_indicator(G, t.character(i)) == 1


def test_group_fs_indicator_cyclic():
    G = catalog.cyclic_regular(5)
    t = character_table(G)
    assert sorted(group_fs_indicator(G, t.character(i)) for i in range(5)) == [0, 0, 0, 0, 1]


def test_quaternion_indicator_minus_one():
    Q = close([P("(1,2,4,7)(3,6,8,5)"), P("(1,3,4,8)(2,5,7,6)")])
    assert Q.order == 8
    t = character_table(Q)
    vals = sorted(group_fs_indicator(Q, t.character(i)) for i in range(t.count))
    assert vals == [-1, 1, 1, 1, 1]


def test_round_integral():
    assert round_integral(3) == 3
    assert round_integral(2 + 1e-9j) == 2
    with pytest.raises(ArithmeticError):
        round_integral(0.5)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(6)), st.permutations(range(6)))
def test_generated_group_contains_products(a, b):
    p, q = Permutation.from_array(a), Permutation.from_array(b)
    G = close([p, q], 6)
    assert math.factorial(6) % G.order == 0
    assert p * q in G and ~p in G
    assert close(G.generators, 6) == G
