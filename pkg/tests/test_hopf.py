import json
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bismash import catalog
from bismash.cases import cntrex_fact
from bismash.chars import character_table
from bismash.factorization import build, conjugate_factors
from bismash.group import close, group_fs_indicator, inv, mul
from bismash.hopf import (HopfBasisElem, _twisted_terms, conjugation_invariance_check,
                          full_report, hopf_oracle, indicator, induced_char_value,
                          involutions_in_L, lambda_sq, stabilizer_table)
from bismash.orbits import all_orbits, orbit_of
from bismash.perm import Permutation, involution_count

from conftest import exact_conjugators

P = Permutation.parse


def s3c4():
    return build(catalog.symmetric_on((1, 2, 3), 4), catalog.cyclic_regular(4))


def s4c5():
    return build(catalog.symmetric_on(range(1, 5), 5), catalog.cyclic_regular(5))


def small_cases():
    return {
        "S3*C4": s3c4,
        "S4*C5": s4c5,
        "S3*AGL1:5": lambda: build(catalog.symmetric_on((1, 2, 3), 5), catalog.agl1(5)),
        "C2*A5": lambda: build(close([P("(1,2)", 5)]), catalog.alternating(5)),
        "A5*C2": lambda: build(catalog.alternating(5), close([P("(1,2)", 5)])),
        "S5*C6": lambda: build(catalog.symmetric_on(range(1, 6), 6), catalog.cyclic_regular(6)),
        "PGL2:5*S3": lambda: build(catalog.pgl2(5), catalog.symmetric_on((1, 2, 3), 6)),
    }


CASES = small_cases()


def literal_indicator(fact, rec, row, transversal=None):
    """nu from the defining sum over y and a in F_{y^-1,y}, evaluated with chi-hat."""
    table = stabilizer_table(fact, rec)
    total = 0
    x = rec.representative
    for y in rec.members:
        yi = inv(y)
        for a in fact.F.arrays:
            if fact.right_raw(yi, a) != y:
                continue
            c = mul(fact.left_raw(yi, a), a)
            elem = HopfBasisElem(Permutation.from_array(y), Permutation.from_array(c))
            total += induced_char_value(fact, x, table, row, elem, transversal)
    value = total / fact.F.order
    assert abs(value - round(value.real)) < 1e-8
    return round(value.real)


@pytest.mark.parametrize("name", ["S3*C4", "S3*AGL1:5", "C2*A5", "A5*C2"])
def test_indicator_matches_literal_sum(name):
    fact = CASES[name]()
    for rec in all_orbits(fact):
        for row in range(stabilizer_table(fact, rec).count):
            assert literal_indicator(fact, rec, row) == indicator(fact, rec.representative, row)


def test_cntrex_literal_sum_with_random_transversal():
    fact = cntrex_fact()
    rng = random.Random(3)
    for rec in all_orbits(fact)[:4]:
        stab = rec.stabilizer.arrays
        T = [mul(inv(u), rng.choice(stab)) for u in rec.transversal.values()]
        for row in range(stabilizer_table(fact, rec).count):
            assert (literal_indicator(fact, rec, row, T)
                    == literal_indicator(fact, rec, row)
                    == indicator(fact, rec.representative, row))


def test_twisted_terms_shortcut():
    fact = cntrex_fact()
    for rec in all_orbits(fact):
        literal = Counter()
        for y, uy in rec.transversal.items():
            yi = inv(y)
            for a in fact.F.arrays:
                if fact.right_raw(yi, a) == y:
                    c = mul(fact.left_raw(yi, a), a)
                    literal[mul(mul(uy, c), inv(uy))] += 1
        assert Counter(_twisted_terms(fact, rec)) == literal


def test_lambda_sq_has_unit_mass_on_involution_free_part():
    fact = s4c5()
    terms = lambda_sq(fact)
    assert all(isinstance(v, Fraction) for v in terms.values())
    # coefficients of p_y # c sum to the number of non-null y over |F|
    assert sum(terms.values()) == Fraction(sum(r.size * (not r.null_indicator) * r.stabilizer.order
                                               for r in all_orbits(fact)), fact.F.order)


def test_induced_character_at_unit():
    fact = s4c5()
    for rec in all_orbits(fact):
        table = stabilizer_table(fact, rec)
        e = Permutation.identity(fact.n)
        for row in range(table.count):
            val = sum(induced_char_value(fact, rec.representative, table, row,
                                         HopfBasisElem(Permutation.from_array(y), e))
                      for y in fact.G.arrays)
            assert val == rec.size * table.degrees[row]


def test_induced_character_off_orbit_is_zero():
    fact = s4c5()
    a, b = all_orbits(fact)[:2]
    table = stabilizer_table(fact, a)
    for y in b.members:
        for f in fact.F.elements[:10]:
            assert induced_char_value(fact, a.representative, table, 0,
                                      HopfBasisElem(Permutation.from_array(y), f)) == 0


@pytest.mark.parametrize("name", list(CASES))
def test_report_invariants(name):
    fact = CASES[name]()
    rep = full_report(fact, threads=1)
    assert rep.trace_ok
    assert rep.dim_square_sum == rep.H_dim == fact.F.order * fact.G.order
    by = {}
    for m in rep.modules:
        by.setdefault(m.orbit, []).append(m.indicator)
    for rec in all_orbits(fact):
        assert all(v == 0 for v in by[rec.index]) == rec.null_indicator
        assert set(by[rec.index]) <= {-1, 0, 1}


@pytest.mark.parametrize("name", list(CASES))
def test_identity_orbit_matches_group_indicator(name):
    fact = CASES[name]()
    e = Permutation.identity(fact.n)
    rec = orbit_of(fact, e)
    table = stabilizer_table(fact, rec)
    for row in range(table.count):
        assert indicator(fact, e, row) == group_fs_indicator(fact.F, table.character(row))


@pytest.mark.parametrize("name", list(CASES))
def test_full_stabilizer_non_involution_is_null(name):
    fact = CASES[name]()
    for rec in all_orbits(fact):
        if rec.stabilizer.order == fact.F.order and not (rec.representative ** 2).is_identity():
            table = stabilizer_table(fact, rec)
            assert all(indicator(fact, rec.representative, r) == 0 for r in range(table.count))


def test_cntrex_report():
    rep = full_report(cntrex_fact(), threads=1)
    assert rep.histogram == {-1: 1, 0: 6, 1: 27}
    assert (rep.trace_lhs, rep.trace_rhs) == (232, 232)
    assert not rep.totally_orthogonal


def test_threads_agree():
    fact = build(catalog.symmetric_on(range(1, 6), 8), catalog.pgl2(7))
    a = full_report(fact, threads=1)
    fact2 = build(catalog.symmetric_on(range(1, 6), 8), catalog.pgl2(7))
    b = full_report(fact2, threads=3)
    assert a.to_dict() == b.to_dict()


def test_json_and_csv():
    rep = full_report(s4c5(), threads=1)
    d = json.loads(json.dumps(rep.to_dict()))
    assert set(d) == {"factorization", "orbits", "trace", "totally_orthogonal"}
    assert set(d["orbits"][0]) == {"rep", "size", "stab_order", "m", "null", "modules"}
    assert set(d["orbits"][0]["modules"][0]) == {"char_degree", "dim", "indicator"}
    assert d["trace"] == {"lhs": 26, "rhs": 26}
    lines = rep.to_csv().strip().splitlines()
    assert len(lines) == 1 + len(rep.modules)


def test_involutions_in_L_generic():
    fact = CASES["PGL2:5*S3"]()
    assert involutions_in_L(fact) == involution_count(6)


@pytest.mark.parametrize("name,trace", [("S3*C4", 10), ("S4*C5", 26), ("S5*C6", 76),
                                        ("PGL2:5*S3", 76), ("C2*A5", 26), ("A5*C2", 26),
                                        ("S3*AGL1:5", 26)])
def test_oracle(name, trace):
    rep = hopf_oracle(CASES[name]())
    assert rep.failures() == {}
    assert rep.passed and rep.trace_S == rep.i_L == trace


def test_oracle_cap():
    from bismash.group import ResourceCapError
    with pytest.raises(ResourceCapError):
        hopf_oracle(build(catalog.symmetric_on(range(1, 7), 7), catalog.cyclic_regular(7)), cap=100)


def test_conjugation_identity():
    fact = s4c5()
    e = Permutation.identity(5)
    assert conjugation_invariance_check(fact, e, e)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10**6))
def test_conjugation_invariance_random(seed):
    fact = cntrex_fact()
    for x, y in exact_conjugators(fact, random.Random(seed), 3):
        assert conjugation_invariance_check(fact, x, y)
