import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ptm.model import Condition, Machine  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
MACHINES = ROOT / "machines"
GOLDEN = Path(__file__).parent / "golden"


def figure1_machine() -> Machine:
    return Machine.build(
        "figure1", ["q1", "q2"], ["s0", "s1"], "s0", "q1",
        [("q1", "s1", "s0", "q2"), ("q1", "s1", "s1", "q2"), ("q1", "s1", "R", "q1")],
    )


@pytest.fixture
def fig1() -> Machine:
    return figure1_machine()


def random_machine(rng: random.Random, consistent: bool = False, conditions: bool = True,
                   max_states: int = 5, max_symbols: int = 4, max_instrs: int = 14) -> Machine:
    """Random well-formed machine; ``consistent`` forbids contradictory pairs."""
    states = [f"q{i}" for i in range(rng.randint(1, max_states))]
    alphabet = [f"s{i}" for i in range(rng.randint(1, max_symbols))]
    actions = alphabet + ["L", "R"]
    conds = list(Condition) if conditions else [Condition.ANY]
    rows = []
    if consistent:
        premises = [(q, s) for q in states for s in alphabet]
        rng.shuffle(premises)
        for q, s in premises[: rng.randint(0, len(premises))]:
            rows.append((q, s, rng.choice(actions), rng.choice(states)))
    else:
        for _ in range(rng.randint(0, max_instrs)):
            rows.append((rng.choice(states), rng.choice(alphabet), rng.choice(actions),
                         rng.choice(states), rng.choice(conds), rng.choice(conds)))
    return Machine.build(f"m{rng.randrange(10**6)}", states, alphabet, alphabet[0],
                         states[0], rows, start_position=rng.randint(-3, 3))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA

    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = rep.nodeid.rsplit("::", 1)[-1]
            if rep.when == "call" and name in CRITERIA:
                lines.append((CRITERIA[name], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for label, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict}  criterion {label}")
