import random

import pytest
from hypothesis import given, settings, strategies as st

from bismash import catalog
from bismash.factorization import (NotExact, act_left, act_right, build, conjugate_factors,
                                   decompose, product_table)
from bismash.group import close
from bismash.perm import Permutation

P = Permutation.parse


def s4c5():
    return build(catalog.symmetric_on(range(1, 5), 5), catalog.cyclic_regular(5))


def cntrex():
    return build(catalog.wtilde_s(7, 2), catalog.agl1(7))


def test_pinned_decomposition():
    f, g = decompose(s4c5(), P("(4,5)"))
    assert f == P("(1,2,3,4)", 5) and g == P("(1,5,4,3,2)")
    assert f * g == P("(4,5)")


def test_pinned_decomposition_against_table():
    fact = s4c5()
    table = product_table(fact.F, fact.G)
    assert table[P("(4,5)").array] == (P("(1,2,3,4)", 5).array, P("(1,5,4,3,2)").array)


@pytest.mark.parametrize("make", [s4c5, cntrex,
                                  lambda: build(close([P("(1,2)", 5)]), catalog.alternating(5)),
                                  lambda: build(catalog.pgl2(5), catalog.symmetric_on((1, 2, 3), 6))])
def test_decomposer_matches_product_table(make):
    fact = make()
    table = product_table(fact.F, fact.G)
    assert len(table) == fact.L_order
    for l, (f, g) in table.items():
        assert fact.decompose_raw(l) == (f, g)


def test_not_exact_intersection():
    with pytest.raises(NotExact) as exc:
        build(catalog.symmetric(4), catalog.symmetric_on((1, 2, 3), 4))
    assert exc.value.witness is not None


def test_not_exact_size():
    with pytest.raises(NotExact):
        build(catalog.symmetric_on(range(1, 4), 5), catalog.cyclic_regular(5))


def test_shape_detection():
    fact = build(catalog.symmetric_on(range(1, 6), 8), catalog.pgl2(7))
    assert fact.sharp_shape and fact.k == 3 and fact.is_symmetric
    assert not cntrex().sharp_shape
    assert cntrex().sharp_k == 2


def test_actions_known_values():
    fact = s4c5()
    g, f = P("(1,2,3,4,5)"), P("(1,2)", 5)
    # g f = (g |> f)(g <| f)
    assert act_left(fact, g, f) * act_right(fact, g, f) == g * f
    with pytest.raises(ValueError):
        act_right(fact, f, g)


def _matched_pair(fact, rng, trials=200):
    F, G = fact.F.elements, fact.G.elements
    for _ in range(trials):
        g, h = rng.choice(G), rng.choice(G)
        a, b = rng.choice(F), rng.choice(F)
        # right action of F on G, left action of G on F
        assert act_right(fact, act_right(fact, g, a), b) == act_right(fact, g, a * b)
        assert act_left(fact, g, act_left(fact, h, a)) == act_left(fact, g * h, a)
        assert act_left(fact, g, a * b) == act_left(fact, g, a) * act_left(fact, act_right(fact, g, a), b)
        assert act_right(fact, g * h, a) == act_right(fact, g, act_left(fact, h, a)) * act_right(fact, h, a)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32))
def test_matched_pair_laws_random(seed):
    _matched_pair(cntrex(), random.Random(seed), 50)


@settings(max_examples=10, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_conjugated_factorization_is_exact(x, y):
    fact = s4c5()
    c = conjugate_factors(fact, Permutation.from_array(x), Permutation.from_array(y))
    assert c.F.order * c.G.order == 120
