"""Ground truth independent of the PTM engine: classical classification,
promised-function enumeration, and the product-representability check."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .generators import BoolFn, Promise, PromiseViolation, classify_fn


@dataclass(frozen=True)
class ClassicalReport:
    classification: Promise
    evaluations_used: int
    worst_case_bound: int


def worst_case_evaluations(n: int) -> int:
    return (1 << (n - 1)) + 1


def classical_classify(f: BoolFn) -> ClassicalReport:
    """Query ``f`` at 0, 1, 2, ... until two values differ or half-plus-one agree."""
    if classify_fn(f) is Promise.NEITHER:
        raise PromiseViolation(f"table {f.bits()} is neither constant nor balanced")
    bound = worst_case_evaluations(f.arity)
    first = f.table[0]
    used = 1
    for x in range(1, bound):
        used += 1
        if f.table[x] != first:
            return ClassicalReport(Promise.BALANCED, used, bound)
    return ClassicalReport(Promise.CONSTANT, used, bound)


def promised_functions(n: int) -> Iterator[BoolFn]:
    """Both constants, then every balanced table in lexicographic order of its ones."""
    size = 1 << n
    yield BoolFn.constant(n, 0)
    yield BoolFn.constant(n, 1)
    for ones in itertools.combinations(range(size), size // 2):
        table = [0] * size
        for i in ones:
            table[i] = 1
        yield BoolFn(n, tuple(table))


PairSet = frozenset  # of (state, symbol) pairs


def product_representable(pairs: Iterable[tuple[str, str]]):
    """Whether ``pairs`` is a full product ``A x B`` of its own projections.

    Returns ``(True, (A, B))`` or ``(False, None)``.
    """
    s = frozenset(pairs)
    if not s:
        raise ValueError("pair set must be nonempty")
    states = frozenset(q for q, _ in s)
    symbols = frozenset(a for _, a in s)
    if s == frozenset(itertools.product(states, symbols)):
        return True, (states, symbols)
    return False, None
