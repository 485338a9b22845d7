"""Garbage removal by the compute, copy, uncompute scheme.

Given a circuit U whose declared ancillae enter as 0, the wrapped circuit
runs U, fans the declared output wires out onto fresh copy qubits with
CNOTs, then runs U inverse.  On every basis input the copy register holds
the computed function value while all of U's own qubits return to their
initial values, so former garbage wires become restored inputs.

The restoration guarantee is stated for basis inputs, which covers every
classical-reversible circuit here; wrapping a superposition-creating U is
allowed but only the gate-count and resource laws still apply.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Register, RegisterLayout, inverse_circuit
from .errors import DomainError
from .gates import cnot


@dataclass(frozen=True)
class BennettSpec:
    """Wrap request: inner circuit, its output wires, and the copy block.

    ``copy_start`` defaults to the top of the inner qubit space; the copy
    register is one fresh qubit per output wire and must not overlap the
    inner circuit.
    """

    inner: Circuit
    output_wires: tuple[int, ...]
    copy_start: int | None = None

    def __post_init__(self):
        wires = tuple(self.output_wires)
        if not wires:
            raise DomainError("at least one output wire is required")
        if len(set(wires)) != len(wires):
            raise DomainError("duplicate output wire")
        if any(w < 0 or w >= self.inner.n_qubits for w in wires):
            raise DomainError("output wire outside the inner circuit")
        object.__setattr__(self, "output_wires", wires)
        start = self.inner.n_qubits if self.copy_start is None else self.copy_start
        if start < self.inner.n_qubits:
            raise DomainError("copy register overlaps the inner circuit")
        object.__setattr__(self, "copy_start", start)


def bennett_wrap(spec: BennettSpec) -> Circuit:
    """Build U, then CNOT fan-out of the outputs, then U inverse.

    The result has exactly 2*|U| + |output_wires| gates, and its T-count
    is twice that of U (the copies are CNOTs).  Layout: inner registers
    keep their names, garbage roles become restored-input, and the copy
    register is appended with role output.
    """
    inner = spec.inner
    k = len(spec.output_wires)
    n_total = spec.copy_start + k
    copies = [cnot(w, spec.copy_start + i)
              for i, w in enumerate(spec.output_wires)]
    ops = inner.ops + tuple(copies) + inverse_circuit(inner).ops
    regs = [
        Register(r.name, r.start, r.size,
                 "restored-input" if r.role == "garbage" else r.role)
        for r in inner.layout.registers
    ]
    taken = {r.name for r in regs}

    def fresh(name: str) -> str:
        while name in taken:
            name += "_"
        return name

    if spec.copy_start > inner.n_qubits:
        regs.append(Register(fresh("pad"), inner.n_qubits,
                             spec.copy_start - inner.n_qubits, "ancilla"))
    regs.append(Register(fresh("copy"), spec.copy_start, k, "output"))
    return Circuit(n_total, ops, RegisterLayout(tuple(regs)))
