"""``ptm`` command-line front end.

Exit codes: 0 success, 1 usage/parse error, 2 step limit, 3 cross-check disagreement.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path
from typing import Sequence

from . import dsl, quantum, trace
from .generators import (
    BoolFn,
    Promise,
    PromiseViolation,
    classify_fn,
    deutsch_machine,
    dj_input,
    dj_machine,
    evaluation_instruction_ids,
    parse_function,
)
from .model import DEFAULT_MAX_STEPS, CapExceeded, Halted, Machine, MachineError, run
from .oracles import classical_classify, product_representable

EXIT_OK, EXIT_USAGE, EXIT_STEP_LIMIT, EXIT_DISAGREE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"ptm: {msg}", file=sys.stderr)


def default_max_steps() -> int:
    raw = os.environ.get("PTM_MAX_STEPS")
    if not raw:
        return DEFAULT_MAX_STEPS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"PTM_MAX_STEPS must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("PTM_MAX_STEPS must be positive")
    return value


def parse_input(text: str, machine: Machine) -> list[str]:
    """Whitespace-separated symbols; a lone token of one-character symbols is split."""
    tokens = text.split()
    if (len(tokens) == 1 and tokens[0] not in machine.alphabet
            and all(c in machine.alphabet for c in tokens[0])):
        return list(tokens[0])
    return tokens


def parse_window(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:(?:\.\.|:)\s*([+-]?\d+)\s*)?", text)
    if m is None:
        raise UsageError(f"bad window {text!r}; expected LO..HI or a single position")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise UsageError(f"empty window {text!r}")
    return lo, hi


def cmd_run(args: argparse.Namespace) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8") if args.file != "-" else sys.stdin.read()
    except OSError as e:
        raise UsageError(str(e)) from None
    parsed = dsl.parse_machine(text)
    if isinstance(parsed, list):
        for e in parsed:
            _err(f"{args.file}:{e}")
        return EXIT_USAGE
    machine = parsed
    symbols = parse_input(args.input, machine)
    max_steps = args.max_steps if args.max_steps is not None else default_max_steps()
    try:
        result = run(machine, symbols, max_steps)
    except MachineError as e:
        raise UsageError(str(e)) from None

    window = parse_window(args.output_window) if args.output_window else None
    try:
        if args.format == "json":
            sys.stdout.write(trace.dumps(trace.trace_document(machine.name, result, window)))
        else:
            sys.stdout.write(trace.render_ascii(result))
            if window is not None:
                outs = trace.trace_document(machine.name, result, window)["outputs"]
                print(f"outputs [{window[0]}..{window[1]}]: " + ", ".join(outs))
    except CapExceeded as e:
        raise UsageError(str(e)) from None
    return EXIT_OK if isinstance(result.status, Halted) else EXIT_STEP_LIMIT


def _function(args: argparse.Namespace, n: int | None) -> BoolFn:
    try:
        return parse_function(args.f, n)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "deutsch":
        machine = deutsch_machine(_function(args, 1))
    else:
        f = _function(args, args.n)
        try:
            machine = dj_machine(f.arity, f)
        except PromiseViolation as e:
            raise UsageError(f"promise violated: {e}") from None
    sys.stdout.write(dsl.serialize_machine(machine))
    return EXIT_OK


def compare(f: BoolFn) -> dict:
    """Classify ``f`` with the PTM, the quantum circuit and the classical oracle."""
    n = f.arity
    machine = dj_machine(n, f)
    res = run(machine, dj_input(n))
    answer = sorted(res.final.tape.read(n))
    ptm_class = {("0",): Promise.CONSTANT, ("1",): Promise.BALANCED}.get(tuple(answer), Promise.NEITHER)
    eval_ids = evaluation_instruction_ids(machine)
    eval_times = sorted({e.config.time for e in res.trace
                         if any(fi.instruction_id in eval_ids for fi in e.fired)})
    q = quantum.dj_circuit(n, f)
    c = classical_classify(f)
    return {
        "n": n,
        "f": f.bits(),
        "expected": classify_fn(f).value,
        "ptm": {"classification": ptm_class.value, "steps": res.status.at_time
                if isinstance(res.status, Halted) else None, "answer_cell": answer,
                "evaluation_steps": len(eval_times)},
        "quantum": {"classification": q.classification.value, "probability": q.probability,
                    "oracle_calls": 1},
        "classical": {"classification": c.classification.value,
                      "evaluations": c.evaluations_used, "worst_case": c.worst_case_bound},
        "agree": ptm_class == q.classification == c.classification,
    }


def cmd_compare(args: argparse.Namespace) -> int:
    f = _function(args, args.n)
    try:
        report = compare(f)
    except PromiseViolation as e:
        raise UsageError(f"promise violated: {e}") from None
    if args.format == "json":
        sys.stdout.write(trace.dumps(report))
    else:
        p, q, c = report["ptm"], report["quantum"], report["classical"]
        print(f"n = {report['n']}  f = {report['f']}")
        print(f"{'backend':<10} {'classification':<15} cost")
        print(f"{'ptm':<10} {p['classification']:<15} {p['steps']} steps, "
              f"{p['evaluation_steps']} evaluation step")
        print(f"{'quantum':<10} {q['classification']:<15} 1 oracle call, probability {q['probability']:.12f}")
        print(f"{'classical':<10} {c['classification']:<15} {c['evaluations']} evaluations "
              f"(worst case {c['worst_case']})")
        print("agree" if report["agree"] else "DISAGREE")
    if not report["agree"]:
        _err("backends disagree; this is a bug")
        return EXIT_DISAGREE
    return EXIT_OK


_PAIR = re.compile(r"([A-Za-z0-9_]+):([A-Za-z0-9_]+)\Z")


def parse_pairs(text: str) -> list[tuple[str, str]]:
    items = [s.strip() for s in text.split(",")]
    if not text.strip() or any(not s for s in items):
        raise UsageError("expected pairs like 'q1:s0,q2:s1'")
    pairs = []
    for item in items:
        m = _PAIR.match(item)
        if m is None:
            raise UsageError(f"malformed pair {item!r}; expected STATE:SYMBOL")
        pairs.append((m.group(1), m.group(2)))
    return pairs


def cmd_check_product(args: argparse.Namespace) -> int:
    ok, factors = product_representable(parse_pairs(args.pairs))
    if ok:
        a, b = (",".join(sorted(s, key=dsl._natural_key)) for s in factors)
        print(f"representable: {{{a}}} × {{{b}}}")
    else:
        print("not representable")
    return EXIT_OK


def cmd_quantum(args: argparse.Namespace) -> int:
    if args.kind == "deutsch":
        f = _function(args, 1)
        res = quantum.deutsch_circuit(f)
    else:
        f = _function(args, args.n)
        try:
            res = quantum.dj_circuit(f.arity, f)
        except PromiseViolation as e:
            raise UsageError(f"promise violated: {e}") from None
    print(f"f = {f.bits()}")
    for outcome, p in sorted(res.distribution.items()):
        print(f"P({outcome}) = {p:.12f}")
    print(f"classification: {res.classification.value} (probability {res.probability:.12f})")
    if args.shots:
        measured = [0] if args.kind == "deutsch" else list(range(f.arity))
        counts = quantum.sample(res.states[-1], measured, args.shots, args.seed)
        for outcome, k in sorted(counts.items()):
            print(f"sampled {outcome}: {k}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptm", description="Paraconsistent Turing machine tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a .ptm machine")
    p.add_argument("file", help="machine file ('-' for stdin)")
    p.add_argument("--input", default="", help="input symbols, whitespace-separated")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--format", choices=("ascii", "json"), default="ascii")
    p.add_argument("--output-window", help="inclusive range LO..HI to enumerate results over")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("gen", help="generate a Deutsch or Deutsch-Jozsa machine")
    p.add_argument("kind", choices=("deutsch", "dj"))
    p.add_argument("--f", required=True, help="truth table bits or const0/const1/parity")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("compare", help="PTM vs quantum circuit vs classical oracle")
    p.add_argument("--f", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--format", choices=("ascii", "json"), default="ascii")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("check-product", help="is a (state, symbol) pair set a product set")
    p.add_argument("pairs", help="e.g. 'q1:s0,q2:s1'")
    p.set_defaults(func=cmd_check_product)

    p = sub.add_parser("quantum", help="run the reference quantum circuit")
    p.add_argument("kind", choices=("deutsch", "dj"))
    p.add_argument("--f", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--shots", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_quantum)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        _err(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
