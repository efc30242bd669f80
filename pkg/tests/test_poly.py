import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import clause_truth, count_true_clauses, poly_value
from minqubo import (Clause, CnfInstance, Polynomial, build_objective, clause_reward,
                     count_satisfied, evaluate, random_3sat)
from minqubo.errors import UnassignedVariable

P = Polynomial


def test_no_negations_reward():
    expected = P({(1,): 1, (2,): 1, (3,): 1, (1, 2): -1, (1, 3): -1, (2, 3): -1, (1, 2, 3): 1})
    assert clause_reward(Clause.from_ints([1, 2, 3])) == expected


def test_one_negation_reward():
    expected = P({(): 1, (3,): -1, (1, 3): 1, (2, 3): 1, (1, 2, 3): -1})
    assert clause_reward(Clause.from_ints([1, 2, -3])) == expected


def test_two_negations_reward():
    expected = P({(): 1, (2, 3): -1, (1, 2, 3): 1})
    assert clause_reward(Clause.from_ints([1, -2, -3])) == expected


def test_three_negations_reward():
    assert clause_reward(Clause.from_ints([-1, -2, -3])) == P({(): 1, (1, 2, 3): -1})


def test_one_negation_truth_table():
    reward = clause_reward(Clause.from_ints([1, 2, -3]))
    for bits in itertools.product((0, 1), repeat=3):
        assert evaluate(reward, bits) == int(clause_truth([1, 2, -3], bits))


@pytest.mark.parametrize("lits", [[1], [-1], [1, 2], [1, -2], [-1, -2], [2, -1, 3]])
def test_short_and_unsorted_clauses(lits):
    clause = Clause.from_ints(lits)
    reward = clause_reward(clause)
    assert reward.degree <= len(lits)
    n = max(abs(v) for v in lits)
    for bits in itertools.product((0, 1), repeat=n):
        assert evaluate(reward, bits) == int(clause_truth(lits, bits))


def test_worked_objective(example_instance):
    expected = P({(): 3, (1,): 1, (2,): 1, (3,): 1, (4,): -1, (1, 2): -2, (1, 3): -2,
                  (1, 4): 1, (2, 3): -1, (2, 4): 1, (1, 2, 3): 3, (1, 2, 4): -1})
    assert build_objective(example_instance) == expected


def test_single_all_negated_clause():
    inst = CnfInstance(3, (Clause.from_ints([-1, -2, -3]),))
    assert build_objective(inst) == P({(): 1, (1, 2, 3): -1})


def test_duplicate_clauses_double():
    c = Clause.from_ints([1, 2, 3])
    obj = build_objective(CnfInstance(3, (c, c)))
    for bits in itertools.product((0, 1), repeat=3):
        assert evaluate(obj, bits) == 2 * int(clause_truth([1, 2, 3], bits))


def test_evaluate_examples(example_instance):
    assert evaluate(P({(): 3, (1,): 1, (1, 2): -2}), (1, 1)) == 2
    obj = build_objective(example_instance)
    assert evaluate(obj, (0, 1, 1, 1)) == 4
    assert evaluate(obj, (0, 0, 0, 0)) == 3 == count_satisfied(example_instance, (0, 0, 0, 0))


def test_unassigned_variable():
    with pytest.raises(UnassignedVariable):
        evaluate(P({(1, 3): 1}), (1, 1))


def test_normalization_and_zero_removal():
    p = P({(2, 1, 1): 3, (1, 2): -3, (3,): 2})
    assert p.terms == {(3,): 2}
    assert (p - p).terms == {}
    assert P({(1, 1): 1}) == P.var(1)
    assert P.var(1) * P.var(1) == P.var(1)


def test_big_coefficients_do_not_wrap():
    big = 2 ** 80
    p = P({(1, 2, 3): big}) + P({(1, 2, 3): big})
    assert p.coefficient(1, 2, 3) == 2 ** 81
    assert evaluate(p, (1, 1, 1)) == 2 ** 81


literal_clauses = st.lists(st.integers(1, 6), min_size=1, max_size=3, unique=True).flatmap(
    lambda vs: st.tuples(*[st.sampled_from([v, -v]) for v in vs]))


@settings(max_examples=100, deadline=None)
@given(st.lists(literal_clauses, min_size=1, max_size=10))
def test_objective_counts_satisfied_clauses(clauses):
    inst = CnfInstance(6, tuple(Clause.from_ints(c) for c in clauses))
    obj = build_objective(inst)
    assert obj.degree <= 3
    for bits in itertools.product((0, 1), repeat=6):
        assert evaluate(obj, bits) == count_true_clauses(clauses, bits)


@settings(max_examples=50, deadline=None)
@given(st.lists(literal_clauses, min_size=1, max_size=10), st.randoms(use_true_random=False))
def test_aggregation_order_independent(clauses, rnd):
    a = CnfInstance(6, tuple(Clause.from_ints(c) for c in clauses))
    shuffled = list(a.clauses)
    rnd.shuffle(shuffled)
    assert build_objective(a) == build_objective(CnfInstance(6, tuple(shuffled)))


poly_dicts = st.dictionaries(
    st.lists(st.integers(1, 5), min_size=0, max_size=3, unique=True).map(lambda v: tuple(sorted(v))),
    st.integers(-5, 5), max_size=8)


@settings(max_examples=100, deadline=None)
@given(poly_dicts, poly_dicts, poly_dicts)
def test_addition_laws(a, b, c):
    pa, pb, pc = P(a), P(b), P(c)
    assert pa + pb == pb + pa
    assert (pa + pb) + pc == pa + (pb + pc)
    for s in (pa + pb, pa - pb, pa * pb):
        assert all(coef != 0 for _, coef in s.items())
    for bits in itertools.product((0, 1), repeat=5):
        assert evaluate(pa + pb, bits) == poly_value(a, bits) + poly_value(b, bits)
        assert evaluate(pa * pb, bits) == poly_value(a, bits) * poly_value(b, bits)


def test_random_instances_match_count():
    for seed in range(20):
        inst = random_3sat(7, 15, seed)
        obj = build_objective(inst)
        rng = random.Random(seed)
        for _ in range(20):
            bits = [rng.randint(0, 1) for _ in range(7)]
            assert evaluate(obj, bits) == count_satisfied(inst, bits)

