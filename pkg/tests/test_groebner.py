"""Buchberger engine: worked instances, the Buchberger criterion post-check,
ideal membership soundness, and a one-sided grid comparison."""
import itertools
import random
from fractions import Fraction

import pytest

from planecurves.errors import BudgetExhausted
from planecurves.groebner import (
    IdealBasis,
    MonOrder,
    _s_polynomial,
    buchberger,
    find_rational_point,
    is_consistent_over_closure,
    normal_form,
    presolve_linear,
)
from planecurves.polynomials import MultiPoly


def mp2(terms):
    return MultiPoly(2, terms, names=("x", "y"))


def test_normal_form_substitutes_leading_terms():
    f = mp2({(2, 1): 1})            # x^2 y
    basis = IdealBasis([mp2({(1, 0): 1, (0, 1): -1})], MonOrder.lex(2))  # x - y
    assert normal_form(f, basis) == mp2({(0, 3): 1})  # y^3


def test_normal_form_trivial_cases():
    basis = IdealBasis([mp2({(0, 1): 1})], MonOrder.lex(2))  # {y}
    assert normal_form(MultiPoly.zero(2), basis).is_zero()
    assert normal_form(mp2({(1, 0): 1}), basis) == mp2({(1, 0): 1})


def test_buchberger_unit_ideal():
    gb = buchberger(IdealBasis([mp2({(1, 0): 1}), mp2({(1, 0): 1, (0, 0): -1})], MonOrder.lex(2)))
    assert len(gb.generators) == 1
    assert gb.generators[0] == MultiPoly.const(2, 1, names=("x", "y"))


def test_buchberger_single_generators_come_back_monic():
    gb = buchberger(IdealBasis([mp2({(1, 0): 2, (0, 1): -2})], MonOrder.lex(2)))
    assert gb.generators == [mp2({(1, 0): 1, (0, 1): -1})]
    gb2 = buchberger(IdealBasis([mp2({(2, 0): 1, (0, 0): 1})], MonOrder.lex(2)))
    assert gb2.generators == [mp2({(2, 0): 1, (0, 0): 1})]


def test_buchberger_classic_pair():
    # <x^2 - y, x^3 - x> has the circle-free lex basis {x^2 - y, x y - x, y^2 - y}
    order = MonOrder.lex(2)
    gb = buchberger(IdealBasis([mp2({(2, 0): 1, (0, 1): -1}), mp2({(3, 0): 1, (1, 0): -1})], order))
    for f, g in itertools.combinations(gb.generators, 2):
        assert normal_form(_s_polynomial(f, g, order), gb).is_zero()


def test_consistency_examples():
    assert is_consistent_over_closure([mp2({(1, 0): 1}), mp2({(1, 0): 1, (0, 0): -1})]) is False
    assert is_consistent_over_closure([mp2({(2, 0): 1, (0, 0): 1})]) is True
    assert is_consistent_over_closure([]) is True


def test_budget_interrupts():
    gens = [
        mp2({(3, 1): 1, (0, 2): 1, (1, 0): -1}),
        mp2({(1, 3): 1, (2, 0): 1, (0, 1): -2}),
        mp2({(2, 2): 1, (0, 0): -1}),
    ]
    with pytest.raises(BudgetExhausted):
        buchberger(IdealBasis(gens, MonOrder.grlex(2)), budget=3)


def rnd_poly(rng, arity=3, terms=3, deg=2):
    t = {}
    for _ in range(terms):
        exps = tuple(rng.randint(0, deg) for _ in range(arity))
        t[exps] = t.get(exps, 0) + rng.randint(-3, 3)
    return MultiPoly(arity, t)


def test_buchberger_criterion_post_check_random():
    rng = random.Random(11)
    for _ in range(8):
        gens = [rnd_poly(rng) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        order = MonOrder.grlex(3)
        gb = buchberger(IdealBasis(gens, order), budget=50000)
        for f, g in itertools.combinations(gb.generators, 2):
            assert normal_form(_s_polynomial(f, g, order), gb).is_zero()


def test_ideal_membership_soundness_random():
    rng = random.Random(23)
    for _ in range(8):
        gens = [rnd_poly(rng, terms=2, deg=1) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        order = MonOrder.grlex(3)
        gb = buchberger(IdealBasis(gens, order), budget=50000)
        combo = MultiPoly.zero(3)
        for g in gens:
            combo = combo + g * rnd_poly(rng, terms=2, deg=1)
        assert normal_form(combo, gb).is_zero()


def test_grid_solutions_imply_consistency():
    rng = random.Random(37)
    grid = [Fraction(v) for v in (-2, -1, 0, 1, 2)]
    for _ in range(10):
        gens = [rnd_poly(rng, arity=2, terms=2, deg=2) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        found = any(
            all(_evaluate(g, (a, b)) == 0 for g in gens)
            for a in grid
            for b in grid
        )
        if found and gens:
            assert is_consistent_over_closure(gens, budget=100000) is True


def _evaluate(g, point):
    acc = Fraction(0)
    for exps, c in g.terms.items():
        term = c
        for k, e in enumerate(exps):
            if e:
                term *= point[k] ** e
        acc += term
    return acc


def test_presolve_eliminates_linear_variables():
    # x + y - 1 eliminates x; remaining system rewritten in y
    gens = [
        MultiPoly(2, {(1, 0): 1, (0, 1): 1, (0, 0): -1}),
        MultiPoly(2, {(2, 0): 1, (0, 1): -1}),
    ]
    reduced, chain = presolve_linear(gens)
    assert len(chain) == 1
    assert len(reduced) == 1
    assert reduced[0].variables_present() == {1}


def test_find_rational_point_simple_systems():
    # x - 2 = 0, y^2 - x - 2 = 0 -> x = 2, y = +-2
    gens = [
        MultiPoly(2, {(1, 0): 1, (0, 0): -2}),
        MultiPoly(2, {(0, 2): 1, (1, 0): -1, (0, 0): -2}),
    ]
    sol = find_rational_point(gens, 2, budget=100000)
    assert sol is not None
    assert sol[0] == 2 and sol[1] in (2, -2)

    # inconsistent
    assert find_rational_point([mp2({(1, 0): 1}), mp2({(1, 0): 1, (0, 0): -1})], 2) is None

    # consistent over the closure but with no rational point: x^2 - 2
    assert find_rational_point([mp2({(2, 0): 1, (0, 0): -2})], 2, budget=100000) is None


def test_find_rational_point_underdetermined():
    # single equation x + y = 3 has many rational points; search must find one
    gens = [mp2({(1, 0): 1, (0, 1): 1, (0, 0): -3})]
    sol = find_rational_point(gens, 2, budget=100000)
    assert sol is not None
    assert sol[0] + sol[1] == 3
