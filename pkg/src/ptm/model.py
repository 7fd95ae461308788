"""Paraconsistent Turing machines: machines, configurations and the step/run semantics.

Every applicable instruction fires at once.  A configuration therefore holds a
*set* of active ``(state, position)`` branches and a tape whose cells hold
nonempty sets of symbols.
"""
from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

RESERVED_TOKENS = frozenset({"L", "R"})
DEFAULT_MAX_STEPS = 1_000_000

Symbol = str
State = str


class MachineError(ValueError):
    """A machine or input that violates the model's invariants."""


class CapExceeded(ValueError):
    """Raised when enumerating results would exceed the caller's cap."""


class Condition(enum.Enum):
    ANY = "any"
    UNIQUE = "unique"  # written with a circle in the usual notation
    MULTIPLE = "multiple"  # written with a bullet in the usual notation


class Direction(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def offset(self) -> int:
        return -1 if self is Direction.LEFT else 1


@dataclass(frozen=True)
class Write:
    symbol: Symbol


@dataclass(frozen=True)
class Move:
    direction: Direction


Action = Union[Write, Move]


@dataclass(frozen=True)
class Instruction:
    id: int
    premise_state: State
    premise_symbol: Symbol
    action: Action
    next_state: State
    state_cond: Condition = Condition.ANY
    symbol_cond: Condition = Condition.ANY

    def premise(self) -> tuple[State, Symbol]:
        return (self.premise_state, self.premise_symbol)

    def body(self) -> tuple:
        """Everything but the id; two instructions with equal bodies are duplicates."""
        return (
            self.premise_state,
            self.state_cond,
            self.premise_symbol,
            self.symbol_cond,
            self.action,
            self.next_state,
        )

    def __str__(self) -> str:
        marks = {Condition.ANY: "", Condition.UNIQUE: "^1", Condition.MULTIPLE: "^+"}
        act = self.action.symbol if isinstance(self.action, Write) else self.action.direction.value
        return (
            f"{self.premise_state}{marks[self.state_cond]} "
            f"{self.premise_symbol}{marks[self.symbol_cond]} {act} {self.next_state}"
        )


def _check_name(name: str, what: str) -> None:
    if not isinstance(name, str) or not name or any(c.isspace() for c in name):
        raise MachineError(f"invalid {what} name {name!r}")
    if name in RESERVED_TOKENS:
        raise MachineError(f"{what} name {name!r} is reserved")


@dataclass(frozen=True)
class Machine:
    name: str
    states: frozenset[State]
    alphabet: frozenset[Symbol]
    blank: Symbol
    instructions: tuple[Instruction, ...]
    start_state: State
    start_position: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "instructions", tuple(self.instructions))
        for s in self.states:
            _check_name(s, "state")
        for a in self.alphabet:
            _check_name(a, "symbol")
        if self.blank not in self.alphabet:
            raise MachineError(f"blank {self.blank!r} is not in the alphabet")
        if self.start_state not in self.states:
            raise MachineError(f"start state {self.start_state!r} is not declared")
        for k, ins in enumerate(self.instructions):
            if ins.id != k:
                raise MachineError(f"instruction at index {k} has id {ins.id}")
            for q in (ins.premise_state, ins.next_state):
                if q not in self.states:
                    raise MachineError(f"instruction {k}: unknown state {q!r}")
            if ins.premise_symbol not in self.alphabet:
                raise MachineError(f"instruction {k}: unknown symbol {ins.premise_symbol!r}")
            if isinstance(ins.action, Write) and ins.action.symbol not in self.alphabet:
                raise MachineError(f"instruction {k}: unknown symbol {ins.action.symbol!r}")

    @classmethod
    def build(
        cls,
        name: str,
        states: Iterable[State],
        alphabet: Iterable[Symbol],
        blank: Symbol,
        start_state: State,
        instructions: Iterable[Sequence],
        start_position: int = 0,
    ) -> "Machine":
        """Build a machine from ``(state, symbol, action, next)`` rows.

        Each row may carry two extra trailing conditions ``(state_cond, symbol_cond)``.
        ``action`` is a symbol name, ``"L"`` or ``"R"``.
        """
        built = []
        for k, row in enumerate(instructions):
            q, s, act, nxt, *conds = row
            action: Action = Move(Direction(act)) if act in RESERVED_TOKENS else Write(act)
            sc, yc = (conds + [Condition.ANY, Condition.ANY])[:2]
            built.append(Instruction(k, q, s, action, nxt, sc, yc))
        return cls(name, frozenset(states), frozenset(alphabet), blank, tuple(built),
                   start_state, start_position)


class Tape(Mapping[int, frozenset]):
    """Immutable sparse tape; cells holding exactly ``{blank}`` are never stored."""

    __slots__ = ("_cells", "blank", "_hash")

    def __init__(self, blank: Symbol, cells: Mapping[int, Iterable[Symbol]] | None = None):
        self.blank = blank
        norm: dict[int, frozenset] = {}
        for pos, syms in (cells or {}).items():
            fs = frozenset(syms)
            if not fs:
                raise MachineError(f"empty symbol set at position {pos}")
            if fs != {blank}:
                norm[int(pos)] = fs
        self._cells = norm
        self._hash: int | None = None

    @classmethod
    def from_input(cls, blank: Symbol, symbols: Sequence[Symbol]) -> "Tape":
        return cls(blank, {i: {s} for i, s in enumerate(symbols)})

    def read(self, position: int) -> frozenset:
        return self._cells.get(position, frozenset((self.blank,)))

    def with_cells(self, updates: Mapping[int, Iterable[Symbol]]) -> "Tape":
        merged = dict(self._cells)
        merged.update(updates)
        return Tape(self.blank, merged)

    def touched(self) -> list[int]:
        return sorted(self._cells)

    def __getitem__(self, position: int) -> frozenset:
        return self._cells[position]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._cells))

    def __len__(self) -> int:
        return len(self._cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tape):
            return NotImplemented
        return self.blank == other.blank and self._cells == other._cells

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.blank, frozenset(self._cells.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {set(sorted(self._cells[p]))}" for p in self)
        return f"Tape(blank={self.blank!r}, {{{body}}})"


@dataclass(frozen=True)
class Configuration:
    time: int
    active: frozenset[tuple[State, int]]
    tape: Tape

    def __post_init__(self) -> None:
        object.__setattr__(self, "active", frozenset(self.active))

    def states_at(self, position: int) -> frozenset[State]:
        return frozenset(q for q, x in self.active if x == position)

    def positions(self) -> list[int]:
        return sorted({x for _, x in self.active})


@dataclass(frozen=True, order=True)
class FiredInstance:
    position: int
    instruction_id: int
    symbol_read: Symbol
    state: State


@dataclass(frozen=True)
class Halted:
    at_time: int


@dataclass(frozen=True)
class StepLimitExceeded:
    limit: int


Status = Union[Halted, StepLimitExceeded]


@dataclass(frozen=True)
class TraceEntry:
    config: Configuration
    fired: tuple[FiredInstance, ...]


@dataclass(frozen=True)
class RunResult:
    status: Status
    final: Configuration
    trace: tuple[TraceEntry, ...] = field(repr=False)

    @property
    def halted(self) -> bool:
        return isinstance(self.status, Halted)


def read_symbols(tape: Tape, position: int) -> frozenset:
    return tape.read(position)


def condition_satisfied(cond: Condition, member, pool) -> bool:
    if cond is Condition.ANY:
        return member in pool
    if cond is Condition.UNIQUE:
        return len(pool) == 1 and member in pool
    return member in pool and len(pool) > 1


def initial_configuration(machine: Machine, input_symbols: Sequence[Symbol] = ()) -> Configuration:
    bad = [s for s in input_symbols if s not in machine.alphabet]
    if bad:
        raise MachineError(f"input symbols not in alphabet: {', '.join(map(repr, bad))}")
    return Configuration(
        0,
        frozenset({(machine.start_state, machine.start_position)}),
        Tape.from_input(machine.blank, input_symbols),
    )


def _by_premise(machine: Machine) -> dict[tuple[State, Symbol], list[Instruction]]:
    index: dict[tuple[State, Symbol], list[Instruction]] = defaultdict(list)
    for ins in machine.instructions:
        index[ins.premise()].append(ins)
    return index


def fired_set(machine: Machine, config: Configuration,
              _index: Mapping | None = None) -> list[FiredInstance]:
    """Every instruction instance applicable in ``config``.

    Conditions are local: the state condition looks at the states present at
    the branch's own position, the symbol condition at that cell's symbol set.
    """
    index = _index if _index is not None else _by_premise(machine)
    local_states: dict[int, set[State]] = defaultdict(set)
    for q, x in config.active:
        local_states[x].add(q)

    out = []
    for q, x in config.active:
        cell = config.tape.read(x)
        for sym in cell:
            for ins in index.get((q, sym), ()):
                if (condition_satisfied(ins.state_cond, q, local_states[x])
                        and condition_satisfied(ins.symbol_cond, sym, cell)):
                    out.append(FiredInstance(x, ins.id, sym, q))
    out.sort()
    return out


def _apply(machine: Machine, config: Configuration,
           fired: Sequence[FiredInstance]) -> Configuration:
    active = set()
    writes: dict[int, set[Symbol]] = defaultdict(set)
    for f in fired:
        ins = machine.instructions[f.instruction_id]
        if isinstance(ins.action, Write):
            writes[f.position].add(ins.action.symbol)
            active.add((ins.next_state, f.position))
        else:
            active.add((ins.next_state, f.position + ins.action.direction.offset))
    tape = config.tape.with_cells(writes) if writes else config.tape
    return Configuration(config.time + 1, frozenset(active), tape)


def step(machine: Machine, config: Configuration) -> tuple[Configuration, list[FiredInstance]]:
    """One synchronous step.  Written cells are replaced by the union of what was written."""
    fired = fired_set(machine, config)
    return _apply(machine, config, fired), fired


def run(machine: Machine, input_symbols: Sequence[Symbol] = (),
        max_steps: int = DEFAULT_MAX_STEPS) -> RunResult:
    """Run until no branch is left alive, or until ``max_steps`` steps were taken.

    A configuration in which nothing fires is followed by one last step that
    drops every branch; the halt time is that of the resulting empty
    configuration.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    index = _by_premise(machine)
    config = initial_configuration(machine, input_symbols)
    trace: list[TraceEntry] = []
    for _ in range(max_steps):
        fired = fired_set(machine, config, index)
        trace.append(TraceEntry(config, tuple(fired)))
        config = _apply(machine, config, fired)
        if not config.active:
            trace.append(TraceEntry(config, ()))
            return RunResult(Halted(config.time), config, tuple(trace))
    trace.append(TraceEntry(config, tuple(fired_set(machine, config, index))))
    return RunResult(StepLimitExceeded(max_steps), config, tuple(trace))


def contradictory_pairs(machine: Machine) -> list[tuple[int, int]]:
    """Pairs of instructions sharing a premise but differing in their conclusion."""
    pairs = []
    for group in _by_premise(machine).values():
        for a, b in itertools.combinations(group, 2):
            if (a.action, a.next_state) != (b.action, b.next_state):
                pairs.append((a.id, b.id))
    return sorted(pairs)


def is_consistent(machine: Machine) -> bool:
    return not contradictory_pairs(machine)


def results(config: Configuration, window: tuple[int, int], cap: int = 10_000) -> set[str]:
    """Every choice of one symbol per cell over the inclusive ``window``."""
    lo, hi = window
    if hi < lo:
        raise ValueError(f"empty window [{lo}, {hi}]")
    cells = [sorted(config.tape.read(x)) for x in range(lo, hi + 1)]
    size = 1
    for c in cells:
        size *= len(c)
    if size > cap:
        raise CapExceeded(f"{size} results exceed cap {cap}")
    return {" ".join(choice) for choice in itertools.product(*cells)}
