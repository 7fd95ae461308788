"""Dense state-vector reference for the Deutsch and Deutsch-Jozsa circuits.

Basis indices are big-endian: qubit 0 is the leftmost tensor factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .generators import BoolFn, Promise, PromiseViolation, classify_fn

NORM_TOL = 1e-9
EXACT_TOL = 1e-12
SQRT1_2 = 1 / np.sqrt(2)


class QuantumError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if self.num_qubits < 1 or amps.shape != (1 << self.num_qubits,):
            raise QuantumError(f"{amps.size} amplitudes do not describe {self.num_qubits} qubits")
        if not np.all(np.isfinite(amps)):
            raise QuantumError("amplitudes must be finite")
        if abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise QuantumError("state vector is not normalized")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, bits: str) -> "StateVector":
        amps = np.zeros(1 << len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(len(bits), amps)

    @classmethod
    def from_amplitudes(cls, amps: Sequence[complex], normalize: bool = False) -> "StateVector":
        a = np.asarray(amps, dtype=complex)
        if normalize:
            a = a / np.linalg.norm(a)
        return cls(int(a.size).bit_length() - 1, a)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def overlap(self, other: "StateVector") -> float:
        """``|<self|other>|``; equals 1 exactly when the states agree up to global phase."""
        return float(abs(np.vdot(self.amps, other.amps)))

    def equiv(self, other: "StateVector", tol: float = NORM_TOL) -> bool:
        return self.num_qubits == other.num_qubits and abs(self.overlap(other) - 1.0) <= tol


@dataclass(frozen=True, eq=False)
class Gate:
    arity: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        dim = 1 << self.arity
        if m.shape != (dim, dim):
            raise QuantumError(f"matrix shape {m.shape} does not fit arity {self.arity}")
        if not is_unitary(m):
            raise QuantumError("gate matrix is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def is_unitary(m: np.ndarray, tol: float = NORM_TOL) -> bool:
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def hadamard() -> Gate:
    return Gate(1, SQRT1_2 * np.array([[1, 1], [1, -1]]))


def identity(arity: int) -> Gate:
    return Gate(arity, np.eye(1 << arity))


def oracle_uf(n: int, f: BoolFn) -> Gate:
    """Permutation ``|x, y> -> |x, y xor f(x)>`` on ``n + 1`` qubits."""
    if f.arity != n:
        raise QuantumError(f"oracle for {n} bits given a function of arity {f.arity}")
    dim = 1 << (n + 1)
    m = np.zeros((dim, dim))
    for x in range(1 << n):
        for y in (0, 1):
            m[(x << 1) | (y ^ f.table[x]), (x << 1) | y] = 1.0
    return Gate(n + 1, m)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    return StateVector(a.num_qubits + b.num_qubits, np.kron(a.amps, b.amps))


def _check_qubits(qubits: Sequence[int], k: int) -> None:
    if len(set(qubits)) != len(qubits) or any(not 0 <= q < k for q in qubits):
        raise QuantumError(f"qubits {list(qubits)} must be distinct and within 0..{k - 1}")


def apply(gate: Gate, sv: StateVector, targets: Sequence[int]) -> StateVector:
    targets = list(targets)
    if len(targets) != gate.arity:
        raise QuantumError(f"gate of arity {gate.arity} given {len(targets)} targets")
    k = sv.num_qubits
    _check_qubits(targets, k)
    psi = sv.amps.reshape((2,) * k)
    op = gate.matrix.reshape((2,) * (2 * gate.arity))
    # contract the gate's input axes with the target axes, then restore qubit order
    out = np.tensordot(op, psi, axes=(list(range(gate.arity, 2 * gate.arity)), targets))
    out = np.moveaxis(out, list(range(gate.arity)), targets)
    return StateVector(k, out.reshape(-1))


def apply_each(gate: Gate, sv: StateVector, qubits: Sequence[int]) -> StateVector:
    for q in qubits:
        sv = apply(gate, sv, [q])
    return sv


def measure_distribution(sv: StateVector, qubits: Sequence[int]) -> dict[str, float]:
    """Marginal Born probabilities of the listed qubits, keyed by outcome bitstring."""
    qubits = list(qubits)
    _check_qubits(qubits, sv.num_qubits)
    probs = np.abs(sv.amps.reshape((2,) * sv.num_qubits)) ** 2
    rest = tuple(q for q in range(sv.num_qubits) if q not in qubits)
    marg = probs.sum(axis=rest) if rest else probs
    # marg axes follow ascending qubit order; reorder to the caller's order
    marg = np.transpose(marg, np.argsort(np.argsort(qubits)))
    out = {}
    for idx in np.ndindex(marg.shape):
        p = float(marg[idx])
        if p > EXACT_TOL:
            out["".join(map(str, idx))] = p
    return out


def sample(sv: StateVector, qubits: Sequence[int], shots: int, seed: int | None = None) -> dict[str, int]:
    dist = measure_distribution(sv, qubits)
    rng = np.random.default_rng(seed)
    keys = sorted(dist)
    p = np.array([dist[k] for k in keys])
    counts = rng.multinomial(shots, p / p.sum())
    return {k: int(c) for k, c in zip(keys, counts) if c}


@dataclass(frozen=True)
class CircuitResult:
    classification: Promise
    probability: float
    distribution: dict[str, float]
    states: tuple[StateVector, ...]


def deutsch_states(f: BoolFn) -> tuple[StateVector, StateVector, StateVector, StateVector]:
    if f.arity != 1:
        raise QuantumError("Deutsch's circuit needs a 1-bit function")
    h = hadamard()
    psi0 = StateVector.basis("01")
    psi1 = apply_each(h, psi0, [0, 1])
    psi2 = apply(oracle_uf(1, f), psi1, [0, 1])
    psi3 = apply(h, psi2, [0])
    return psi0, psi1, psi2, psi3


def deutsch_closed_forms(f: BoolFn) -> tuple[StateVector, StateVector, StateVector]:
    """The textbook expressions for psi_1..psi_3 (up to the sign in front)."""
    plus = np.array([1, 1]) * SQRT1_2
    minus = np.array([1, -1]) * SQRT1_2
    psi1 = np.kron(plus, minus)
    if f.table[0] == f.table[1]:
        psi2, psi3 = np.kron(plus, minus), np.kron([1, 0], minus)
    else:
        psi2, psi3 = np.kron(minus, minus), np.kron([0, 1], minus)
    return tuple(StateVector(2, v) for v in (psi1, psi2, psi3))


def deutsch_circuit(f: BoolFn) -> CircuitResult:
    states = deutsch_states(f)
    for got, want in zip(states[1:], deutsch_closed_forms(f)):
        if not got.equiv(want):
            raise AssertionError("intermediate state departs from its closed form")
    dist = measure_distribution(states[3], [0])
    outcome = max(dist, key=dist.get)
    verdict = Promise.CONSTANT if outcome == "0" else Promise.BALANCED
    return CircuitResult(verdict, dist[outcome], dist, states)


def dj_states(n: int, f: BoolFn) -> tuple[StateVector, StateVector, StateVector, StateVector]:
    h = hadamard()
    psi0 = StateVector.basis("0" * n + "1")
    psi1 = apply_each(h, psi0, range(n + 1))
    psi2 = apply(oracle_uf(n, f), psi1, range(n + 1))
    psi3 = apply_each(h, psi2, range(n))
    return psi0, psi1, psi2, psi3


def dj_circuit(n: int, f: BoolFn) -> CircuitResult:
    """Classify ``f`` with one oracle call; all-zero readout means constant."""
    if f.arity != n:
        raise QuantumError(f"expected arity {n}, got {f.arity}")
    if classify_fn(f) is Promise.NEITHER:
        raise PromiseViolation(f"table {f.bits()} is neither constant nor balanced")
    states = dj_states(n, f)
    dist = measure_distribution(states[3], range(n))
    p_zero = dist.get("0" * n, 0.0)
    if p_zero >= 0.5:
        return CircuitResult(Promise.CONSTANT, p_zero, dist, states)
    return CircuitResult(Promise.BALANCED, 1.0 - p_zero, dist, states)


def is_entangled_2qubit(sv: StateVector, tol: float = NORM_TOL) -> bool:
    if sv.num_qubits != 2:
        raise QuantumError("entanglement test is defined for 2 qubits")
    a00, a01, a10, a11 = sv.amps
    return bool(abs(a00 * a11 - a01 * a10) > tol)
