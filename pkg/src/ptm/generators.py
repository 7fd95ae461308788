"""Compilers producing PTM programs for Deutsch's and the Deutsch-Jozsa problems."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .model import Condition, Machine

ANY, UNIQUE, MULTIPLE = Condition.ANY, Condition.UNIQUE, Condition.MULTIPLE

BUILTIN_FUNCTIONS = ("const0", "const1", "parity")


class PromiseViolation(ValueError):
    """The function is neither constant nor balanced."""


@dataclass(frozen=True)
class BoolFn:
    """Boolean function of ``arity`` bits, tabulated by big-endian input index."""

    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(int(b) for b in self.table))
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        if len(self.table) != 1 << self.arity:
            raise ValueError(f"table of length {len(self.table)} does not match arity {self.arity}")
        if any(b not in (0, 1) for b in self.table):
            raise ValueError("table entries must be 0 or 1")

    @classmethod
    def from_bits(cls, bits: str) -> "BoolFn":
        bits = bits.strip()
        n = len(bits).bit_length() - 1
        if not bits or len(bits) != 1 << n or set(bits) - {"0", "1"}:
            raise ValueError(f"truth table {bits!r} must be a 0/1 string of length 2^n")
        return cls(n, tuple(int(c) for c in bits))

    @classmethod
    def constant(cls, arity: int, value: int) -> "BoolFn":
        return cls(arity, (value,) * (1 << arity))

    @classmethod
    def parity(cls, arity: int) -> "BoolFn":
        return cls(arity, tuple(bin(i).count("1") & 1 for i in range(1 << arity)))

    def __call__(self, *bits: int) -> int:
        if len(bits) != self.arity:
            raise TypeError(f"expected {self.arity} bits, got {len(bits)}")
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.table[idx]

    def cofactor(self, bit: int) -> "BoolFn":
        """Fix the first input to ``bit``."""
        if self.arity == 0:
            raise ValueError("cannot cofactor an arity-0 function")
        half = len(self.table) // 2
        return BoolFn(self.arity - 1, self.table[bit * half:(bit + 1) * half])

    def bits(self) -> str:
        return "".join(map(str, self.table))

    def image(self) -> set[int]:
        return set(self.table)


def parse_function(spec: str, n: int | None = None) -> BoolFn:
    """Read a truth-table bitstring or one of the builtin names."""
    if spec in BUILTIN_FUNCTIONS:
        if n is None:
            raise ValueError(f"builtin {spec!r} needs an arity")
        if spec == "parity":
            return BoolFn.parity(n)
        return BoolFn.constant(n, int(spec[-1]))
    f = BoolFn.from_bits(spec)
    if n is not None and f.arity != n:
        raise ValueError(f"table {spec!r} has arity {f.arity}, expected {n}")
    return f


class Promise(enum.Enum):
    CONSTANT = "Constant"
    BALANCED = "Balanced"
    NEITHER = "Neither"


def classify_fn(f: BoolFn) -> Promise:
    ones = sum(f.table)
    if ones in (0, len(f.table)):
        return Promise.CONSTANT
    if 2 * ones == len(f.table):
        return Promise.BALANCED
    return Promise.NEITHER


@dataclass(frozen=True)
class ResidualAutomaton:
    """Iterated first-input cofactors of ``f``, deduplicated per level."""

    levels: tuple[tuple[BoolFn, ...], ...]
    transitions: dict[tuple[int, BoolFn, int], BoolFn] = field(hash=False)

    @property
    def arity(self) -> int:
        return len(self.levels) - 1

    def index(self, level: int, g: BoolFn) -> int:
        return self.levels[level].index(g)


def residual_automaton(f: BoolFn) -> ResidualAutomaton:
    levels = [(f,)]
    transitions = {}
    for k in range(f.arity):
        nxt: dict[BoolFn, None] = {}
        for g in levels[k]:
            for b in (0, 1):
                h = g.cofactor(b)
                transitions[(k, g, b)] = h
                nxt.setdefault(h)
        levels.append(tuple(nxt))
    return ResidualAutomaton(tuple(levels), transitions)


def deutsch_machine(f: BoolFn) -> Machine:
    """The seven-instruction machine answering Deutsch's problem in cell 0."""
    if f.arity != 1:
        raise ValueError(f"Deutsch's problem needs a 1-bit function, got arity {f.arity}")
    f0, f1 = (str(v) for v in f.table)
    rows = [
        ("q1", "1", "0", "q2"),
        ("q1", "1", "1", "q2"),
        ("q2", "0", f0, "q3"),
        ("q2", "1", f1, "q3"),
        ("q3", "0", "0", "q4", ANY, UNIQUE),
        ("q3", "1", "0", "q4", ANY, UNIQUE),
        ("q3", "1", "1", "q4", ANY, MULTIPLE),
    ]
    return Machine.build(f"deutsch_{f.bits()}", ["q1", "q2", "q3", "q4"], ["0", "1"], "0",
                         "q1", rows)


GENERATION_BLOCK = (
    ("q1", "1", "0", "q2"),
    ("q1", "1", "1", "q2"),
    ("q1", "1", "R", "q1"),
    ("q1", "0", "L", "q3"),
    ("q3", "1", "L", "q3"),
    ("q3", "0", "R", "q4", ANY, UNIQUE),
)
TEST_STATE = "qT"
HALT_STATE = "qH"


def residual_state(level: int, index: int) -> str:
    return f"r{level}_{index}"


def dj_machine(n: int, f: BoolFn) -> Machine:
    """Deutsch-Jozsa machine for input ``1^n``; the answer lands in cell ``n``.

    Cell ``n`` ends as ``{0}`` when ``f`` is constant and ``{1}`` when balanced.
    The run halts after exactly ``3n + 5`` steps.
    """
    if n < 1 or f.arity != n:
        raise ValueError(f"expected a function of arity {n}, got {f.arity}")
    if classify_fn(f) is Promise.NEITHER:
        raise PromiseViolation(f"table {f.bits()} is neither constant nor balanced")

    auto = residual_automaton(f)

    def name(level: int, g: BoolFn) -> str:
        return "q4" if level == 0 else residual_state(level, auto.index(level, g))

    rows: list[tuple] = list(GENERATION_BLOCK)
    for k in range(n):
        for g in auto.levels[k]:
            for b in (0, 1):
                rows.append((name(k, g), str(b), "R", name(k + 1, auto.transitions[(k, g, b)])))
    for c in auto.levels[n]:
        rows.append((name(n, c), "0", str(c.table[0]), TEST_STATE))
    rows += [
        (TEST_STATE, "0", "0", HALT_STATE, ANY, UNIQUE),
        (TEST_STATE, "1", "0", HALT_STATE, ANY, UNIQUE),
        (TEST_STATE, "1", "1", HALT_STATE, ANY, MULTIPLE),
    ]
    states = {"q1", "q2", "q3", "q4", TEST_STATE, HALT_STATE}
    states.update(name(k, g) for k in range(1, n + 1) for g in auto.levels[k])
    return Machine.build(f"dj{n}_{f.bits()}", states, ["0", "1"], "0", "q1", rows)


def evaluation_instruction_ids(machine: Machine) -> set[int]:
    """Ids of the write instructions that emit f-values in a :func:`dj_machine`."""
    return {ins.id for ins in machine.instructions if ins.next_state == TEST_STATE}


def dj_input(n: int) -> list[str]:
    return ["1"] * n
