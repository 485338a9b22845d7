"""Dense statevector simulation kernel.

A state on n qubits is a length-2^n vector of complex amplitudes c_j over
the computational basis, with measurement probabilities p_j = |c_j|^2.
Qubit k is bit k of the basis index j, so qubit 0 is the least significant
bit and an integer register laid out on consecutive qubits reads back by a
plain bit-field extraction.

States are immutable: every operation returns a fresh value and the
amplitude buffers are marked read-only.  Statevector allocation is capped
at 24 qubits (a ~270 MB vector); wider circuits must go through the exact
classical permutation path in the circuit module.

Randomness is never ambient.  Every sampling operation takes an explicit
integer seed and draws from a Philox 64-bit counter-based generator, so
results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError
from .gates import Gate, matrix

#: Hard ceiling on statevector width; 2^24 amplitudes is the desk-scale limit.
MAX_SIM_QUBITS = 24

#: Amplitudes below this are treated as zero when fixing a canonical phase.
PHASE_EPS = 1e-12


def make_rng(seed: int) -> np.random.Generator:
    """Seeded Philox (counter-based) generator; the only randomness source."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector over the 2^n computational basis states.

    The amplitudes must be finite; physical states are additionally
    normalized (sum |c_j|^2 = 1 within 1e-10), which ``new_basis_state``
    guarantees and unitary gate application preserves.
    """

    n_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DomainError("need at least one qubit")
        if self.n_qubits > MAX_SIM_QUBITS:
            raise ResourceError(
                f"{self.n_qubits} qubits exceeds the {MAX_SIM_QUBITS}-qubit "
                "statevector ceiling"
            )
        arr = np.asarray(self.amps, dtype=complex)
        if arr.shape != (1 << self.n_qubits,):
            raise DomainError(
                f"amplitude vector must have length {1 << self.n_qubits}"
            )
        if not np.all(np.isfinite(arr.view(float))):
            raise DomainError("amplitudes must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class MeasurementCounts:
    """Histogram of sampled basis outcomes; counts sum to ``shots``."""

    shots: int
    counts: dict[int, int]


def new_basis_state(n_qubits: int, basis_index: int) -> StateVector:
    """The computational basis state |basis_index> on ``n_qubits`` qubits."""
    if n_qubits < 1:
        raise DomainError("need at least one qubit")
    if n_qubits > MAX_SIM_QUBITS:
        raise ResourceError(
            f"{n_qubits} qubits exceeds the {MAX_SIM_QUBITS}-qubit ceiling"
        )
    if not 0 <= basis_index < (1 << n_qubits):
        raise DomainError(
            f"basis index {basis_index} out of range for {n_qubits} qubits"
        )
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[basis_index] = 1.0
    return StateVector(n_qubits, amps)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply a gate's unitary, tensor-extended with identity, to the state.

    Norm is preserved to floating-point accuracy.  Gate qubit indices must
    be in range (pairwise distinctness is enforced by the Gate type).
    """
    n = state.n_qubits
    if any(q >= n for q in gate.qubits):
        raise DomainError(f"gate {gate.kind} {gate.qubits} exceeds {n} qubits")
    k = len(gate.qubits)
    mat = matrix(gate)
    # Reshape to an n-axis tensor where axis (n-1-q) carries qubit q, pull
    # the gate's qubits to the front (first listed = most significant), and
    # contract with the gate matrix.
    psi = state.amps.reshape((2,) * n)
    axes = [n - 1 - q for q in gate.qubits]
    psi = np.moveaxis(psi, axes, range(k))
    shape = psi.shape
    psi = mat @ psi.reshape(1 << k, -1)
    psi = np.moveaxis(psi.reshape(shape), range(k), axes)
    return StateVector(n, psi.reshape(-1))


def probabilities(state: StateVector) -> np.ndarray:
    """Outcome probabilities p_j = |c_j|^2 as a float vector."""
    return np.abs(state.amps) ** 2


def sample(state: StateVector, shots: int, seed: int) -> MeasurementCounts:
    """Draw ``shots`` independent basis-state measurements.

    Deterministic for a fixed seed; see ``make_rng`` for the generator.
    """
    if shots < 1:
        raise DomainError("shots must be at least 1")
    rng = make_rng(seed)
    p = probabilities(state)
    p = p / p.sum()
    outcomes = rng.choice(len(p), size=shots, p=p)
    values, freqs = np.unique(outcomes, return_counts=True)
    return MeasurementCounts(shots, {int(v): int(c) for v, c in zip(values, freqs)})


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.n_qubits != b.n_qubits:
        raise DomainError("states have different qubit counts")
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: StateVector, b: StateVector) -> float:
    """Overlap squared |<a|b>|^2, in [0, 1] for normalized states."""
    return abs(inner_product(a, b)) ** 2


def canonical_phase(state: StateVector) -> StateVector:
    """Remove the global phase: first significant amplitude made real positive.

    States that differ only by a unit-modulus scalar map to the same
    canonical form, which is how equivalence up to global phase is decided.
    """
    amps = state.amps
    for a in amps:
        if abs(a) > PHASE_EPS:
            return StateVector(state.n_qubits, amps * (abs(a) / a))
    return state


def states_equal_up_to_phase(a: StateVector, b: StateVector, tol: float = 1e-10) -> bool:
    """Whether two states coincide after dropping global phase."""
    if a.n_qubits != b.n_qubits:
        return False
    ca = canonical_phase(a).amps
    cb = canonical_phase(b).amps
    return bool(np.max(np.abs(ca - cb)) <= tol)


def bloch_coords(state: StateVector) -> tuple[float, float]:
    """Spherical angles (theta, phi) of a single-qubit state.

    Uses the full-angle parameterization c_0 = cos(theta),
    c_1 = e^{i phi} sin(theta) with theta in [0, pi/2], phi in [0, 2 pi),
    not the conventional half-angle form.  The angles are read off after
    removing global phase; phi is defined as 0 when sin(theta) vanishes.
    """
    if state.n_qubits != 1:
        raise DomainError("bloch_coords requires a single-qubit state")
    c0, c1 = canonical_phase(state).amps
    theta = float(np.arctan2(abs(c1), abs(c0)))
    if abs(c1) < PHASE_EPS:
        return theta, 0.0
    phi = float(np.angle(c1) % (2 * np.pi))
    return theta, phi
