import itertools
import math

import pytest
from hypothesis import given, strategies as st

from bismash.perm import (Permutation, compose, conjugate, fixed_point_profile, fixed_points,
                          involution_count, involution_count_k2, involution_count_k3)


def perms(n):
    return st.permutations(range(1, n + 1)).map(Permutation)


P = Permutation.parse


def test_left_to_right_composition():
    assert compose(P("(1,2)", 3), P("(1,3)", 3)) == P("(1,2,3)")
    assert P("(1,2)", 3) * P("(1,3)", 3) == P("(1,2,3)")


def test_conjugation_is_x_inverse_s_x():
    s, x = P("(1,2)", 3), P("(1,2,3)")
    assert conjugate(s, x) == ~x * s * x == P("(2,3)", 3)


def test_parse_and_print():
    assert str(Permutation.identity(5)) == "()"
    assert P("(1,2,3)(4,5)").images == (2, 3, 1, 5, 4)
    assert P("() ", 4) == Permutation.identity(4)
    assert P("(1,2)(6,7)", 7).cycle_str() == "(1,2)(6,7)"
    with pytest.raises(ValueError):
        P("(1,2,1)")
    with pytest.raises(ValueError):
        P("(1,9)", 5)


def test_fixed_points_examples():
    assert fixed_points(Permutation.identity(5)) == {1, 2, 3, 4, 5}
    assert fixed_points(P("(1,2,3)", 5)) == {4, 5}
    assert fixed_points(P("(1,2)(3,4)", 4)) == set()


def test_degree_mismatch():
    with pytest.raises(ValueError):
        compose(P("(1,2)", 3), P("(1,2)", 4))


@given(perms(7), perms(7), perms(7))
def test_group_laws(p, q, r):
    e = Permutation.identity(7)
    assert (p * q) * r == p * (q * r)
    assert e * p == p * e == p
    assert ~p * p == e
    assert (p * q).sign() == p.sign() * q.sign()


@given(perms(8))
def test_order_and_cycles(p):
    assert (p ** p.order()).is_identity()
    assert sum(p.cycle_type()) == 8
    assert math.lcm(*p.cycle_type()) == p.order()
    assert P(p.cycle_str(), 8) == p


def test_involution_count_values():
    assert involution_count(0) == 1
    assert involution_count(4) == 10
    assert [involution_count(n) for n in (5, 6, 7, 8)] == [26, 76, 232, 764]
    assert involution_count(11) == 35696
    assert involution_count(12) == 140152


@pytest.mark.parametrize("n", range(0, 9))
def test_involution_count_bruteforce(n):
    inv = sum(1 for p in itertools.permutations(range(n))
              if all(p[p[i]] == i for i in range(n)))
    assert involution_count(n) == inv


@pytest.mark.parametrize("n", range(6, 21))
def test_involution_recursions(n):
    assert involution_count_k2(n) == involution_count(n)
    assert involution_count_k3(n) == involution_count(n)


def test_fixed_point_profile_small():
    assert fixed_point_profile(3) == {0: 2, 1: 3, 2: 0, 3: 1}


@pytest.mark.parametrize("n", range(1, 9))
def test_fixed_point_moment_identities(n):
    phi = fixed_point_profile(n)
    f = math.factorial(n)
    assert sum(phi.values()) == f
    assert sum(m * c for m, c in phi.items()) == f
    if n >= 2:
        assert sum(m * m * c for m, c in phi.items()) == 2 * f
    if n >= 3:
        assert sum(m ** 3 * c for m, c in phi.items()) == 5 * f


def test_fixed_point_profile_cap():
    with pytest.raises(MemoryError):
        fixed_point_profile(12)
