"""Trace documents (JSON) and figure-style ASCII rendering of a run."""
from __future__ import annotations

import json
from typing import Any

from .dsl import _natural_key
from .model import Halted, RunResult, results


def _sorted_symbols(cell) -> list[str]:
    return sorted(cell, key=_natural_key)


def status_dict(result: RunResult) -> dict[str, Any]:
    if isinstance(result.status, Halted):
        return {"kind": "Halted", "at_time": result.status.at_time}
    return {"kind": "StepLimitExceeded", "limit": result.status.limit}


def trace_document(machine_name: str, result: RunResult,
                   output_window: tuple[int, int] | None = None,
                   cap: int = 10_000) -> dict[str, Any]:
    steps = []
    for entry in result.trace:
        cfg = entry.config
        steps.append({
            "t": cfg.time,
            "active": [{"state": q, "pos": x}
                       for q, x in sorted(cfg.active, key=lambda a: (a[1], _natural_key(a[0])))],
            "tape": {str(x): _sorted_symbols(cfg.tape[x]) for x in cfg.tape},
            "fired": [{"instr": f.instruction_id, "pos": f.position, "state": f.state,
                       "symbol": f.symbol_read} for f in entry.fired],
        })
    outputs = None
    if output_window is not None:
        outputs = sorted(results(result.final, output_window, cap))
    return {"machine": machine_name, "steps": steps, "status": status_dict(result),
            "outputs": outputs}


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _window(result: RunResult) -> tuple[int, int]:
    positions = {0}
    for entry in result.trace:
        positions.update(entry.config.tape)
        positions.update(x for _, x in entry.config.active)
    return min(positions) - 1, max(positions) + 1


def _braced(items) -> str:
    return "{" + ", ".join(items) + "}"


def render_ascii(result: RunResult) -> str:
    """One block per time step: fired instructions, state sets, cell sets, positions.

    Instructions are labelled ``i1, i2, ...`` (1-based); the parenthesised
    list on row ``t`` names the instructions executed at ``t - 1``.
    """
    lo, hi = _window(result)
    cols = range(lo, hi + 1)
    rows = []
    for entry in result.trace:
        cfg = entry.config
        states = {x: _braced(sorted(cfg.states_at(x), key=_natural_key)) for x in cfg.positions()}
        cells = {x: _braced(_sorted_symbols(cfg.tape.read(x))) for x in cols}
        widths = {x: max(len(cells[x]), len(states.get(x, "")), len(str(x))) for x in cols}
        rows.append((cfg.time, states, cells, widths))

    width = {x: max(r[3][x] for r in rows) for x in cols}
    out = []
    prev_fired: tuple = ()
    for (t, states, cells, _), entry in zip(rows, result.trace):
        head = f"t = {t}"
        if t > 0:
            ids = sorted({f.instruction_id for f in prev_fired})
            head += " (" + ", ".join(f"i{k + 1}" for k in ids) + ")"
        out.append(head)
        out.append(("      " + "   ".join(states.get(x, "").ljust(width[x]) for x in cols)).rstrip())
        out.append("  ... " + " | ".join(cells[x].ljust(width[x]) for x in cols) + " ...")
        out.append(("      " + "   ".join(str(x).ljust(width[x]) for x in cols)).rstrip())
        prev_fired = entry.fired
    if isinstance(result.status, Halted):
        out.append(f"halted at t = {result.status.at_time}")
    else:
        out.append(f"step limit {result.status.limit} exceeded")
    return "\n".join(out) + "\n"
