"""Paraconsistent Turing machine simulator with Deutsch/Deutsch-Jozsa compilers."""
from .dsl import ParseError, load_machine, parse_machine, serialize_machine
from .generators import BoolFn, Promise, classify_fn, deutsch_machine, dj_machine
from .model import (
    Condition,
    Configuration,
    Halted,
    Machine,
    RunResult,
    StepLimitExceeded,
    Tape,
    contradictory_pairs,
    fired_set,
    run,
    step,
)

__all__ = [
    "BoolFn", "Condition", "Configuration", "Halted", "Machine", "ParseError", "Promise",
    "RunResult", "StepLimitExceeded", "Tape", "classify_fn", "contradictory_pairs",
    "deutsch_machine", "dj_machine", "fired_set", "load_machine", "parse_machine", "run",
    "serialize_machine", "step",
]
