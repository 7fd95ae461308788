from itertools import combinations, product
from math import comb

import numpy as np
import pytest

from ptm.generators import BoolFn, Promise, PromiseViolation, classify_fn
from ptm.oracles import (
    classical_classify,
    product_representable,
    promised_functions,
    worst_case_evaluations,
)
from ptm.quantum import StateVector, is_entangled_2qubit


def test_classical_classify_examples():
    r = classical_classify(BoolFn.from_bits("0110"))
    assert (r.classification, r.evaluations_used) == (Promise.BALANCED, 2)
    r = classical_classify(BoolFn.constant(2, 1))
    assert (r.classification, r.evaluations_used, r.worst_case_bound) == (Promise.CONSTANT, 3, 3)
    r = classical_classify(BoolFn.constant(1, 0))
    assert (r.classification, r.evaluations_used) == (Promise.CONSTANT, 2)
    with pytest.raises(PromiseViolation):
        classical_classify(BoolFn.from_bits("0001"))


def test_classical_within_bound():
    for n in (1, 2, 3, 4):
        for f in promised_functions(n):
            r = classical_classify(f)
            assert r.classification is classify_fn(f)
            assert 2 <= r.evaluations_used <= r.worst_case_bound == 2 ** (n - 1) + 1


def test_worst_case_is_attained():
    for n in range(1, 11):
        assert classical_classify(BoolFn.constant(n, 0)).evaluations_used == worst_case_evaluations(n)
        # a balanced function hiding its ones in the upper half is just as expensive
        half = 1 << (n - 1)
        late = BoolFn(n, (0,) * half + (1,) * half)
        assert classical_classify(late).evaluations_used == half + 1


@pytest.mark.parametrize("n, count", [(1, 4), (2, 8), (3, 72), (4, 2 + comb(16, 8))])
def test_promised_functions(n, count):
    fs = list(promised_functions(n))
    assert len(fs) == count
    assert len({f.table for f in fs}) == count
    assert [classify_fn(f) for f in fs[:2]] == [Promise.CONSTANT] * 2
    assert all(classify_fn(f) is Promise.BALANCED for f in fs[2:])
    assert fs == list(promised_functions(n))


def test_product_representable_examples():
    assert product_representable({("q1", "s0"), ("q2", "s1")}) == (False, None)
    assert product_representable({("q1", "s0"), ("q1", "s1")}) == (True, ({"q1"}, {"s0", "s1"}))
    full = set(product(("q1", "q2"), ("s0", "s1")))
    assert product_representable(full) == (True, ({"q1", "q2"}, {"s0", "s1"}))
    with pytest.raises(ValueError):
        product_representable(set())


def test_cardinality_shortcut_on_3x3_universe():
    universe = list(product(("a", "b", "c"), ("x", "y", "z")))
    checked = 0
    for r in range(1, 10):
        for subset in combinations(universe, r):
            s = set(subset)
            a = {q for q, _ in s}
            b = {y for _, y in s}
            assert product_representable(s)[0] == (len(s) == len(a) * len(b))
            checked += 1
    assert checked == 2 ** 9 - 1


def uniform_support_state(support):
    amps = np.zeros(4)
    for q, s in support:
        amps[2 * q + s] = 1
    return StateVector(2, amps / np.linalg.norm(amps))


def test_representability_vs_entanglement():
    cells = list(product((0, 1), (0, 1)))
    unreachable = []
    for r in range(1, 5):
        for support in combinations(cells, r):
            rep, _ = product_representable(support)
            ent = is_entangled_2qubit(uniform_support_state(support))
            if rep:
                assert not ent
            else:
                assert ent
                unreachable.append(set(support))
    assert len(unreachable) == 15 - 9
    # the Bell configuration is entangled and has no product-set counterpart
    assert {(0, 0), (1, 1)} in unreachable
