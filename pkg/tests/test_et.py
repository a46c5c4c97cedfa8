"""Elementary transformations and peak reduction."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from planecurves.errors import DegenerateLinear, SearchBudgetExceeded
from planecurves.et import (
    ETStep,
    PolyPair,
    apply_et,
    find_reducing_et,
    peak_reduce,
    sequence_reducible_oracle,
)
from planecurves.polynomials import NEG_INF, UniPoly


def up(*coeffs):
    return UniPoly(coeffs)


def t_pow(k, c=1):
    return UniPoly.term(c, k)


def test_apply_et_examples():
    # (t^2, t^4) with v -> v - u^2 kills v
    out = apply_et(PolyPair(t_pow(2), t_pow(4)), ETStep.add2(-1, 2))
    assert out == PolyPair(t_pow(2), UniPoly.zero())

    pair = PolyPair(up(1, 2), up(0, 0, 3))
    assert apply_et(pair, ETStep.linear(1, 0, 0, 1)) == pair

    out = apply_et(PolyPair(up(0, 0, 1, 1), t_pow(3)), ETStep.linear(1, -1, 0, 1))
    assert out == PolyPair(t_pow(2), t_pow(3))


def test_degenerate_linear_rejected():
    with pytest.raises(DegenerateLinear):
        ETStep.linear(1, 2, 2, 4)


def test_find_reducing_et_examples():
    assert find_reducing_et(PolyPair(t_pow(2), t_pow(3))) is None

    step = find_reducing_et(PolyPair(UniPoly.t(), t_pow(5)))
    assert step == ETStep.add2(Fraction(-1), 5)
    # and it genuinely zeroes the big component
    assert apply_et(PolyPair(UniPoly.t(), t_pow(5)), step).v.is_zero()

    step = find_reducing_et(PolyPair(up(0, 0, 1, 1), t_pow(3)))
    assert step.kind == "linear"
    assert step.matrix == (1, -1, 0, 1)


def test_peak_reduce_two_power_steps():
    # (t^6 + t, t^3): subtract v^2 from u, then u^3 from v
    pair = PolyPair(up(0, 1, 0, 0, 0, 0, 1), t_pow(3))
    result, trace = peak_reduce(pair)
    assert result == PolyPair(UniPoly.t(), UniPoly.zero())
    assert [s.kind for s in trace.steps] == ["add1", "add2"]
    assert trace.steps[0] == ETStep.add1(Fraction(-1), 2)
    assert trace.steps[1] == ETStep.add2(Fraction(-1), 3)
    assert trace.degree_profile == [3, 1]


def test_peak_reduce_already_irreducible():
    pair = PolyPair(t_pow(2), t_pow(3))
    result, trace = peak_reduce(pair)
    assert result == pair and trace.steps == []


def test_peak_reduce_equal_leading_terms():
    pair = PolyPair(up(0, 0, 1, 1), t_pow(3))
    result, trace = peak_reduce(pair)
    assert result == PolyPair(t_pow(2), t_pow(3))
    assert len(trace.steps) == 1 and trace.steps[0].kind == "linear"


def test_oracle_examples():
    assert sequence_reducible_oracle(PolyPair(t_pow(2), t_pow(3)), 2) is False
    assert sequence_reducible_oracle(PolyPair(UniPoly.t(), t_pow(5)), 1) is True
    assert sequence_reducible_oracle(PolyPair(up(0, 1, 0, 0, 0, 0, 1), t_pow(3)), 2) is True


def test_oracle_depth_guard():
    with pytest.raises(SearchBudgetExceeded):
        sequence_reducible_oracle(PolyPair(UniPoly.t(), UniPoly.t()), 4)


def rnd_unipoly(rng, max_deg=6):
    deg = rng.randint(-1, max_deg)
    if deg < 0:
        return UniPoly.zero()
    coeffs = [rng.randint(-3, 3) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    return UniPoly(coeffs)


def rnd_step(rng):
    choice = rng.random()
    if choice < 0.4:
        return ETStep.add1(Fraction(rng.choice([-2, -1, 1, 2])), rng.randint(2, 3))
    if choice < 0.8:
        return ETStep.add2(Fraction(rng.choice([-2, -1, 1, 2])), rng.randint(2, 3))
    while True:
        m = [rng.randint(-2, 2) for _ in range(4)]
        if m[0] * m[3] - m[1] * m[2] != 0:
            return ETStep.linear(*m)


def test_every_step_is_invertible():
    rng = random.Random(5)
    for _ in range(300):
        pair = PolyPair(rnd_unipoly(rng, 4), rnd_unipoly(rng, 4))
        step = rnd_step(rng)
        assert apply_et(apply_et(pair, step), step.inverse()) == pair


def test_peak_reduce_profile_is_monotone():
    rng = random.Random(7)
    for _ in range(200):
        pair = PolyPair(rnd_unipoly(rng), rnd_unipoly(rng))
        result, trace = peak_reduce(pair)
        measures = [pair.measure()]
        current = pair
        for step in trace.steps:
            current = apply_et(current, step)
            measures.append(current.measure())
        assert current == result
        assert all(b < a for a, b in zip(measures, measures[1:]))
        # profile records the running maximum and never increases
        maxes = [m[0] for m in measures[1:]]
        assert trace.degree_profile == maxes


def test_peak_reduce_is_a_fixed_point():
    rng = random.Random(9)
    for _ in range(200):
        pair = PolyPair(rnd_unipoly(rng), rnd_unipoly(rng))
        reduced, _ = peak_reduce(pair)
        again, trace = peak_reduce(reduced)
        assert again == reduced and trace.steps == []


def test_single_step_matches_bounded_sequences():
    # one-step reducibility agrees with two-step reducibility on random pairs
    rng = random.Random(13)
    for _ in range(250):
        pair = PolyPair(rnd_unipoly(rng), rnd_unipoly(rng))
        single = find_reducing_et(pair) is not None
        assert sequence_reducible_oracle(pair, 2) == single
