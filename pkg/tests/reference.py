"""Reference implementations used as test oracles.

None of these import the engine's step logic; they share only the Machine
data type as input.
"""
from __future__ import annotations

from functools import reduce

import numpy as np

from ptm.model import Condition, Machine, Move, Write


class ClassicalTM:
    """Plain deterministic single-tape machine (quadruple instructions)."""

    def __init__(self, machine: Machine, tape_input):
        self.table = {}
        for ins in machine.instructions:
            self.table[(ins.premise_state, ins.premise_symbol)] = ins
        self.blank = machine.blank
        self.tape = {i: s for i, s in enumerate(tape_input) if s != self.blank}
        self.state = machine.start_state
        self.pos = machine.start_position
        self.halted = False

    def symbol(self, pos):
        return self.tape.get(pos, self.blank)

    def step(self):
        if self.halted:
            return
        ins = self.table.get((self.state, self.symbol(self.pos)))
        if ins is None:
            self.halted = True
            return
        if isinstance(ins.action, Write):
            if ins.action.symbol == self.blank:
                self.tape.pop(self.pos, None)
            else:
                self.tape[self.pos] = ins.action.symbol
        else:
            self.pos += -1 if ins.action.direction.value == "L" else 1
        self.state = ins.next_state


def _holds(cond, member, pool):
    if cond == Condition.ANY:
        return member in pool
    if cond == Condition.UNIQUE:
        return pool == {member}
    return member in pool and len(pool) >= 2


def predicate_run(machine: Machine, tape_input, limit=10_000):
    """PTM semantics over the predicate extensions Q(t, x) and S(t, x).

    Returns the list of (Q, S, fired) per time, where Q is a set of
    (state, x), S a set of (symbol, x) listing only explicitly written cells,
    fired the set of (instruction id, x).  Stops when Q becomes empty.
    """
    Q = {(machine.start_state, machine.start_position)}
    S = {(s, i) for i, s in enumerate(tape_input)}
    history = []
    for _ in range(limit):
        def cell(x):
            here = {s for (s, y) in S if y == x}
            return here or {machine.blank}

        fired = set()
        nextQ = set()
        written = {}
        for ins in machine.instructions:
            for (q, x) in Q:
                if q != ins.premise_state:
                    continue
                states_here = {p for (p, y) in Q if y == x}
                c = cell(x)
                if not _holds(ins.state_cond, q, states_here):
                    continue
                if not _holds(ins.symbol_cond, ins.premise_symbol, c):
                    continue
                fired.add((ins.id, x))
                if isinstance(ins.action, Move):
                    nextQ.add((ins.next_state, x + (1 if ins.action.direction.value == "R" else -1)))
                else:
                    nextQ.add((ins.next_state, x))
                    written.setdefault(x, set()).add(ins.action.symbol)
        history.append((frozenset(Q), frozenset(S), frozenset(fired)))
        S = {(s, y) for (s, y) in S if y not in written} | {(s, x) for x, ss in written.items() for s in ss}
        Q = nextQ
        if not Q:
            history.append((frozenset(), frozenset(S), frozenset()))
            break
    return history


def cell_of(S, x, blank):
    return {s for (s, y) in S if y == x} or {blank}


# -- quantum: everything as full 2^k x 2^k matrices built from Kronecker products

H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
I2 = np.eye(2)


def full_operator(single: np.ndarray, target: int, k: int) -> np.ndarray:
    return reduce(np.kron, [single if q == target else I2 for q in range(k)])


def uf_matrix(table, n):
    dim = 2 ** (n + 1)
    m = np.zeros((dim, dim))
    for col in range(dim):
        bits = format(col, f"0{n + 1}b")
        x, y = int(bits[:n], 2), int(bits[n])
        row = int(bits[:n] + str(y ^ table[x]), 2)
        m[row, col] = 1
    return m


def dj_final_vector(table, n):
    k = n + 1
    v = np.zeros(2 ** k)
    v[1] = 1  # |0...0 1>
    for q in range(k):
        v = full_operator(H, q, k) @ v
    v = uf_matrix(table, n) @ v
    for q in range(n):
        v = full_operator(H, q, k) @ v
    return v
