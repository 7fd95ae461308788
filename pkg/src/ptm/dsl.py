"""Reader and writer for the ``.ptm`` machine-description format.

Example::

    machine figure1
    states q1 q2
    alphabet s0 s1
    blank s0
    start q1 at 0
    instr q1 s1 s0 q2
    instr q1 s1 s1 q2
    instr q1 s1 R q1

``^1`` after a premise term demands unicity, ``^+`` multiplicity.  ``#``
starts a comment.  The parser never raises on bad text; it collects every
diagnosable error and returns them as a list.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Union

from .model import (
    RESERVED_TOKENS,
    Condition,
    Direction,
    Instruction,
    Machine,
    Move,
    Write,
)

KEYWORDS = ("machine", "alphabet", "blank", "states", "start", "instr")
_STATEMENTS = frozenset(KEYWORDS)

_TERM = re.compile(r"([A-Za-z0-9_]+)(\^(?:1|\+))?\Z")
_INT = re.compile(r"[+-]?[0-9]+\Z")

# fixed-arity statements; the others run to the next keyword
_ARITY = {"machine": 1, "blank": 1, "start": 3, "instr": 4}

_COND_MARK = {None: Condition.ANY, "^1": Condition.UNIQUE, "^+": Condition.MULTIPLE}
_MARK_OF = {Condition.ANY: "", Condition.UNIQUE: "^1", Condition.MULTIPLE: "^+"}


class ErrorKind(enum.Enum):
    SYNTAX = "Syntax"
    UNKNOWN_STATE = "UnknownState"
    UNKNOWN_SYMBOL = "UnknownSymbol"
    RESERVED_TOKEN = "ReservedToken"
    DUPLICATE_DECLARATION = "DuplicateDeclaration"
    MISSING_DECLARATION = "MissingDeclaration"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    message: str
    kind: ErrorKind

    def __str__(self) -> str:
        return f"{self.span}: {self.kind.value}: {self.message}"


class MachineSyntaxError(ValueError):
    """Raised by :func:`load_machine` when the text does not describe a machine."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("\n".join(map(str, errors)))


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, len(self.text))


def _tokenize(text: str) -> list[_Token]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in re.finditer(r"\S+", line):
            out.append(_Token(m.group(), lineno, m.start() + 1))
    return out


def _end_span(text: str) -> SourceSpan:
    lines = text.splitlines() or [""]
    return SourceSpan(len(lines), len(lines[-1]) + 1, 0)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.errors: list[ParseError] = []
        self.name: str | None = None
        self.states: dict[str, _Token] = {}
        self.alphabet: dict[str, _Token] = {}
        self.blank: _Token | None = None
        self.start: tuple[_Token, int] | None = None
        self.seen: dict[str, _Token] = {}
        self.instrs: list[tuple] = []

    def error(self, span: SourceSpan, kind: ErrorKind, message: str) -> None:
        self.errors.append(ParseError(span, message, kind))

    def peek(self) -> _Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def statement_args(self, limit: int | None = None) -> list[_Token]:
        """Consume up to ``limit`` tokens, stopping at the next statement keyword."""
        args: list[_Token] = []
        while ((tok := self.peek()) is not None and tok.text not in _STATEMENTS
               and (limit is None or len(args) < limit)):
            args.append(tok)
            self.i += 1
        return args

    def ident(self, tok: _Token, what: str) -> str | None:
        m = _TERM.match(tok.text)
        if m is None or m.group(2):
            self.error(tok.span, ErrorKind.SYNTAX, f"expected {what} identifier, got {tok.text!r}")
            return None
        return tok.text

    def declare(self, tok: _Token, table: dict[str, _Token], what: str) -> None:
        name = self.ident(tok, what)
        if name is None:
            return
        if name in RESERVED_TOKENS or name in _STATEMENTS:
            self.error(tok.span, ErrorKind.RESERVED_TOKEN, f"{name!r} is reserved and cannot be a {what}")
        elif name in table:
            self.error(tok.span, ErrorKind.DUPLICATE_DECLARATION, f"{what} {name!r} declared twice")
        else:
            table[name] = tok

    def once(self, kw: _Token) -> bool:
        if kw.text in self.seen:
            prev = self.seen[kw.text]
            self.error(kw.span, ErrorKind.DUPLICATE_DECLARATION,
                       f"second '{kw.text}' declaration (first at {prev.span})")
            return False
        self.seen[kw.text] = kw
        return True

    def parse(self) -> None:
        first = self.peek()
        if first is None or first.text != "machine":
            span = first.span if first else _end_span(self.text)
            self.error(span, ErrorKind.SYNTAX, "file must start with 'machine NAME'")
        while (kw := self.peek()) is not None:
            self.i += 1
            if kw.text not in _STATEMENTS:
                self.error(kw.span, ErrorKind.SYNTAX, f"expected a statement keyword, got {kw.text!r}")
                self.statement_args()
                continue
            args = self.statement_args(_ARITY.get(kw.text))
            getattr(self, f"_stmt_{kw.text}")(kw, args)
        self.finish()

    def _stmt_machine(self, kw: _Token, args: list[_Token]) -> None:
        if not self.once(kw):
            return
        if len(args) != 1:
            span = args[1].span if len(args) > 1 else kw.span
            self.error(span, ErrorKind.SYNTAX, "'machine' takes exactly one name")
        if args:
            self.name = self.ident(args[0], "machine")

    def _stmt_states(self, kw: _Token, args: list[_Token]) -> None:
        if not self.once(kw):
            return
        if not args:
            self.error(kw.span, ErrorKind.SYNTAX, "'states' needs at least one state")
        for tok in args:
            self.declare(tok, self.states, "state")

    def _stmt_alphabet(self, kw: _Token, args: list[_Token]) -> None:
        if not self.once(kw):
            return
        if not args:
            self.error(kw.span, ErrorKind.SYNTAX, "'alphabet' needs at least one symbol")
        for tok in args:
            self.declare(tok, self.alphabet, "symbol")

    def _stmt_blank(self, kw: _Token, args: list[_Token]) -> None:
        if not self.once(kw):
            return
        if len(args) != 1:
            span = args[1].span if len(args) > 1 else kw.span
            self.error(span, ErrorKind.SYNTAX, "'blank' takes exactly one symbol")
        if args and self.ident(args[0], "symbol") is not None:
            self.blank = args[0]

    def _stmt_start(self, kw: _Token, args: list[_Token]) -> None:
        if not self.once(kw):
            return
        if len(args) != 3 or args[1].text != "at" or not _INT.match(args[2].text):
            span = args[0].span if args else kw.span
            self.error(span, ErrorKind.SYNTAX, "expected 'start STATE at INT'")
            return
        if self.ident(args[0], "state") is not None:
            self.start = (args[0], int(args[2].text))

    def _stmt_instr(self, kw: _Token, args: list[_Token]) -> None:
        if len(args) != 4:
            span = args[4].span if len(args) > 4 else kw.span
            self.error(span, ErrorKind.SYNTAX,
                       f"'instr' takes 4 fields (state symbol action next), got {len(args)}")
            return
        q, s, act, nxt = args
        terms = []
        for tok in (q, s):
            m = _TERM.match(tok.text)
            if m is None:
                self.error(tok.span, ErrorKind.SYNTAX, f"malformed premise term {tok.text!r}")
                return
            terms.append((m.group(1), _COND_MARK[m.group(2)]))
        if self.ident(act, "action") is None or self.ident(nxt, "state") is None:
            return
        self.instrs.append((kw, q, terms[0], s, terms[1], act, nxt))

    def finish(self) -> None:
        for key in ("machine", "states", "alphabet", "blank", "start"):
            if key not in self.seen:
                self.error(_end_span(self.text), ErrorKind.MISSING_DECLARATION,
                           f"missing '{key}' declaration")
        if self.blank is not None and self.alphabet and self.blank.text not in self.alphabet:
            self.error(self.blank.span, ErrorKind.UNKNOWN_SYMBOL,
                       f"blank {self.blank.text!r} is not in the alphabet")
        if self.start is not None and self.states and self.start[0].text not in self.states:
            self.error(self.start[0].span, ErrorKind.UNKNOWN_STATE,
                       f"start state {self.start[0].text!r} is not declared")
        for _, qt, (q, _), st, (s, _), act, nxt in self.instrs:
            self.check_state(qt, q)
            self.check_symbol(st, s)
            if act.text not in RESERVED_TOKENS:
                self.check_symbol(act, act.text)
            self.check_state(nxt, nxt.text)

    def check_state(self, tok: _Token, name: str) -> None:
        if "states" in self.seen and name not in self.states:
            self.error(SourceSpan(tok.line, tok.column, len(name)), ErrorKind.UNKNOWN_STATE,
                       f"undeclared state {name!r}")

    def check_symbol(self, tok: _Token, name: str) -> None:
        if "alphabet" in self.seen and name not in self.alphabet:
            self.error(SourceSpan(tok.line, tok.column, len(name)), ErrorKind.UNKNOWN_SYMBOL,
                       f"undeclared symbol {name!r}")

    def machine(self) -> Machine:
        instructions = []
        for k, (_, _, (q, qc), _, (s, sc), act, nxt) in enumerate(self.instrs):
            action = Move(Direction(act.text)) if act.text in RESERVED_TOKENS else Write(act.text)
            instructions.append(Instruction(k, q, s, action, nxt.text, qc, sc))
        assert self.start is not None and self.blank is not None and self.name is not None
        return Machine(
            name=self.name,
            states=frozenset(self.states),
            alphabet=frozenset(self.alphabet),
            blank=self.blank.text,
            instructions=tuple(instructions),
            start_state=self.start[0].text,
            start_position=self.start[1],
        )


ParseResult = Union[Machine, list[ParseError]]


def parse_machine(text: str) -> ParseResult:
    """Parse ``.ptm`` text into a :class:`Machine`, or return every error found."""
    p = _Parser(text)
    p.parse()
    if p.errors:
        return sorted(p.errors, key=lambda e: (e.span.line, e.span.column))
    return p.machine()


def load_machine(text: str) -> Machine:
    result = parse_machine(text)
    if isinstance(result, list):
        raise MachineSyntaxError(result)
    return result


def _names(items) -> str:
    return " ".join(sorted(items, key=_natural_key))


def _natural_key(name: str):
    return [(0, int(p), "") if p.isdigit() else (1, 0, p) for p in re.split(r"(\d+)", name) if p]


def serialize_machine(machine: Machine) -> str:
    lines = [
        f"machine {machine.name}",
        f"states {_names(machine.states)}",
        f"alphabet {_names(machine.alphabet)}",
        f"blank {machine.blank}",
        f"start {machine.start_state} at {machine.start_position}",
    ]
    for ins in machine.instructions:
        act = ins.action.symbol if isinstance(ins.action, Write) else ins.action.direction.value
        lines.append(
            f"instr {ins.premise_state}{_MARK_OF[ins.state_cond]} "
            f"{ins.premise_symbol}{_MARK_OF[ins.symbol_cond]} {act} {ins.next_state}"
        )
    return "\n".join(lines) + "\n"
