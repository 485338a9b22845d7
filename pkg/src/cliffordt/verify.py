"""Verification and simulated device benchmarking.

Three layers of checking live here:

* exhaustive oracle equivalence for the arithmetic generators, which runs
  every admissible basis input through the circuit and compares the
  decoded registers against a pure integer-arithmetic oracle;
* single-qubit state tomography by rotate-then-measure sampling along
  three orthogonal axes;
* randomized benchmarking of the 24-element single-qubit Clifford group
  under a depolarizing fault model, with an exponential decay fit.

The noise model is trajectory sampling on pure states: after each Clifford
application, with probability d the state is hit by a Pauli error drawn
uniformly from {X, Y, Z}.  Averaged over trajectories this reproduces
depolarizing statistics, shrinking the Bloch vector by (1 - 4d/3) per
step, without ever forming a density matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Sequence

import numpy as np

from .arith import ArithInstance
from .circuit import (Circuit, is_permutation_circuit, permutation_output,
                      simulate)
from .errors import DomainError, FitError, ResourceError
from .gates import Gate, h, matrix, s, sdg
from .state import (MAX_SIM_QUBITS, apply_gate, bloch_coords, make_rng,
                    new_basis_state, probabilities)

Oracle = Callable[[Mapping[str, int]], dict[str, int]]


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate depolarizing fault: error probability d in [0, 1]."""

    depolarizing_prob: float

    def __post_init__(self):
        if not 0.0 <= self.depolarizing_prob <= 1.0:
            raise DomainError("depolarizing probability must lie in [0, 1]")


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of an exhaustive circuit-versus-oracle comparison.

    Mismatches are (input, expected, observed) basis-index triples;
    ``passed`` holds exactly when there are none.
    """

    total_inputs: int
    mismatches: tuple[tuple[int, int, int], ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "total_inputs": self.total_inputs,
            "mismatches": [list(m) for m in self.mismatches],
            "passed": self.passed,
        }

    def to_text(self) -> str:
        lines = [
            f"passed: {str(self.passed).lower()}",
            f"total_inputs: {self.total_inputs}",
            f"mismatch_count: {len(self.mismatches)}",
        ]
        for inp, exp, got in self.mismatches[:32]:
            lines.append(f"mismatch: input={inp} expected={exp} observed={got}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RBResult:
    """Randomized-benchmarking data and its fitted decay A*p^m + B."""

    lengths: tuple[int, ...]
    mean_fidelity: tuple[float, ...]
    fit_A: float
    fit_B: float
    fit_p: float
    error_per_gate: float

    def to_dict(self) -> dict:
        return {
            "lengths": list(self.lengths),
            "mean_fidelity": list(self.mean_fidelity),
            "fit_A": self.fit_A,
            "fit_B": self.fit_B,
            "fit_p": self.fit_p,
            "error_per_gate": self.error_per_gate,
        }

    def to_text(self) -> str:
        lines = ["lengths: " + " ".join(str(m) for m in self.lengths),
                 "mean_fidelity: " + " ".join(f"{f:.6f}" for f in self.mean_fidelity),
                 f"fit_A: {self.fit_A:.6f}",
                 f"fit_B: {self.fit_B:.6f}",
                 f"fit_p: {self.fit_p:.6f}",
                 f"error_per_gate: {self.error_per_gate:.6f}"]
        return "\n".join(lines) + "\n"


class FitResult(NamedTuple):
    A: float
    B: float
    p: float
    residual: float


def unitarity_check(m: np.ndarray) -> float:
    """Max entrywise deviation of U*U-dagger from the identity."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("unitarity check needs a square matrix")
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


def exhaustive_check(instance: ArithInstance, oracle: Oracle) -> EquivalenceReport:
    """Compare a circuit against a classical oracle on every basis input.

    Inputs range over the instance's free registers with ancillae held at
    0 and constants pinned.  Each run must land exactly on the oracle's
    predicted basis state: within the statevector ceiling the target
    amplitude has to be within 1e-9 of 1, while wider permutation-only
    circuits go through the exact classical basis propagation (those runs
    have target amplitude exactly 1 by construction).
    """
    circ = instance.circuit
    use_statevector = circ.n_qubits <= MAX_SIM_QUBITS
    if not use_statevector and not is_permutation_circuit(circ):
        raise ResourceError(
            f"{circ.n_qubits} qubits exceeds the statevector ceiling and the "
            "circuit is not a basis permutation"
        )
    mismatches: list[tuple[int, int, int]] = []
    total = 0
    for values in instance.input_space():
        total += 1
        index_in = instance.encode(values)
        expected_regs = oracle({**values, **instance.constants})
        index_exp = instance.encode(expected_regs)
        if use_statevector:
            state = simulate(circ, index_in)
            amp = state.amps[index_exp]
            if abs(amp - 1.0) > 1e-9:
                observed = int(np.argmax(np.abs(state.amps)))
                mismatches.append((index_in, index_exp, observed))
        else:
            observed = permutation_output(circ, index_in)
            if observed != index_exp:
                mismatches.append((index_in, index_exp, observed))
    return EquivalenceReport(total, tuple(mismatches), not mismatches)


# Measurement bases for tomography: rotate the axis onto Z, then sample.
_AXIS_PREFIXES: tuple[tuple[str, tuple[Gate, ...]], ...] = (
    ("x", (h(0),)),
    ("y", (sdg(0), h(0))),
    ("z", ()),
)


def tomography_1q(state_prep: Circuit, shots_per_axis: int,
                  seed: int) -> tuple[float, float, float]:
    """Estimate the Bloch vector of a one-qubit preparation circuit.

    For each of the three axes the prepared state is rotated so the axis
    lies along Z and sampled ``shots_per_axis`` times; the expectation is
    the mean of +/-1 outcomes.  Finite sampling can push the estimated
    vector slightly outside the unit ball.
    """
    if state_prep.n_qubits != 1:
        raise DomainError("tomography_1q needs a one-qubit circuit")
    if shots_per_axis < 1:
        raise DomainError("shots_per_axis must be at least 1")
    rng = make_rng(seed)
    prepared = simulate(state_prep, 0)
    estimates = {}
    for axis, prefix in _AXIS_PREFIXES:
        state = prepared
        for g in prefix:
            state = apply_gate(state, g)
        p0 = float(np.clip(probabilities(state)[0], 0.0, 1.0))
        zeros = int(rng.binomial(shots_per_axis, p0))
        estimates[axis] = 2.0 * zeros / shots_per_axis - 1.0
    return estimates["x"], estimates["y"], estimates["z"]


def bloch_vector(state) -> tuple[float, float, float]:
    """Exact Bloch vector (x, y, z) of a one-qubit state via its angles."""
    theta, phi = bloch_coords(state)
    return (float(np.sin(2 * theta) * np.cos(phi)),
            float(np.sin(2 * theta) * np.sin(phi)),
            float(np.cos(2 * theta)))


def _canonical_key(m: np.ndarray) -> bytes:
    # Pivot on the first entry within tolerance of the max magnitude, so
    # float noise cannot flip which of several tied entries sets the phase.
    flat = m.reshape(-1)
    mags = np.abs(flat)
    pivot = flat[int(np.argmax(mags >= mags.max() - 1e-6))]
    canon = np.round(m * (abs(pivot) / pivot), 6)
    return (canon + (0.0 + 0.0j)).tobytes()  # flush signed zeros


def _enumerate_cliffords() -> list[tuple[tuple[str, ...], np.ndarray]]:
    """The 24 single-qubit Cliffords as {H, S} words, deduped up to phase."""
    generators = {"h": matrix(h(0)), "s": matrix(s(0))}
    seen: dict[bytes, tuple[tuple[str, ...], np.ndarray]] = {}
    frontier = [((), np.eye(2, dtype=complex))]
    seen[_canonical_key(np.eye(2, dtype=complex))] = frontier[0]
    while frontier:
        nxt = []
        for word, mat in frontier:
            for name, gen in generators.items():
                new_word = word + (name,)
                new_mat = gen @ mat
                key = _canonical_key(new_mat)
                if key not in seen:
                    entry = (new_word, new_mat)
                    seen[key] = entry
                    nxt.append(entry)
        frontier = nxt
    elements = sorted(seen.values(), key=lambda e: (len(e[0]), e[0]))
    assert len(elements) == 24
    return elements


_CLIFFORDS = _enumerate_cliffords()
_CLIFFORD_INDEX = {_canonical_key(m): i for i, (_, m) in enumerate(_CLIFFORDS)}

_PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _inverse_clifford(total: np.ndarray) -> np.ndarray:
    idx = _CLIFFORD_INDEX[_canonical_key(total.conj().T)]
    return _CLIFFORDS[idx][1]


def run_rb(noise: NoiseModel, lengths: Sequence[int], n_sequences: int,
           shots: int, seed: int) -> RBResult:
    """Single-qubit randomized benchmarking under depolarizing noise.

    For each length m, ``n_sequences`` random Clifford sequences are drawn,
    closed with the exact group inverse of their product, and executed with
    the trajectory noise described in the module docstring (the inverting
    element is noisy too).  Survival of |0> is estimated from ``shots``
    samples per sequence, averaged, and fitted to A*p^m + B.  The reported
    error per gate is (1-p)/2, the one-qubit conversion of the decay
    constant; the fit does not claim p itself is a fidelity.
    """
    lengths = tuple(int(m) for m in lengths)
    if not lengths:
        raise DomainError("lengths must be nonempty")
    if any(m < 1 for m in lengths) or any(
            b <= a for a, b in zip(lengths, lengths[1:])):
        raise DomainError("lengths must be positive and strictly increasing")
    if n_sequences < 1 or shots < 1:
        raise DomainError("n_sequences and shots must be at least 1")
    d = noise.depolarizing_prob
    rng = make_rng(seed)
    mats = [m for _, m in _CLIFFORDS]
    mean_fidelity = []
    for m in lengths:
        survivals = np.empty(n_sequences)
        for i in range(n_sequences):
            psi = np.array([1.0, 0.0], dtype=complex)
            total = np.eye(2, dtype=complex)
            picks = rng.integers(0, len(mats), size=m)
            for idx in picks:
                psi = mats[idx] @ psi
                total = mats[idx] @ total
                if d > 0.0 and rng.random() < d:
                    psi = _PAULIS[rng.integers(3)] @ psi
            psi = _inverse_clifford(total) @ psi
            if d > 0.0 and rng.random() < d:
                psi = _PAULIS[rng.integers(3)] @ psi
            p0 = abs(psi[0]) ** 2
            if abs(p0 - 1.0) < 1e-9:
                p0 = 1.0
            p0 = min(max(p0, 0.0), 1.0)
            survivals[i] = rng.binomial(shots, p0) / shots
        mean_fidelity.append(float(survivals.mean()))
    fit = fit_exponential_decay(list(zip(lengths, mean_fidelity)))
    p = min(max(fit.p, 0.0), 1.0)
    return RBResult(lengths, tuple(mean_fidelity), fit.A, fit.B, p,
                    error_per_gate=(1.0 - p) / 2.0)


def fit_exponential_decay(points: Sequence[tuple[float, float]]) -> FitResult:
    """Least-squares fit of f = A*p^m + B.

    Initialization is a log-domain linear fit of f - 0.5 (the one-qubit
    uniform-outcome floor), refined by damped Gauss-Newton.  Constant data
    takes the p=1 branch with B equal to the constant, so noiseless runs
    report p exactly 1.  Fewer than three points or fewer than two
    distinct m values cannot determine the model and raise FitError.
    """
    ms = np.array([float(m) for m, _ in points])
    fs = np.array([float(f) for _, f in points])
    if len(points) < 3:
        raise FitError("need at least 3 points")
    if len(np.unique(ms)) < 2:
        raise FitError("need at least 2 distinct sequence lengths")
    if np.allclose(fs, fs[0], atol=1e-12):
        return FitResult(A=0.0, B=float(fs[0]), p=1.0, residual=0.0)

    b0 = 0.5
    y = fs - b0
    mask = y > 1e-9
    if mask.sum() >= 2:
        coeffs = np.polyfit(ms[mask], np.log(y[mask]), 1)
        p0 = float(np.exp(coeffs[0]))
        a0 = float(np.exp(coeffs[1]))
    else:
        p0, a0 = 0.9, max(float(fs.max() - b0), 0.1)
    p0 = min(max(p0, 1e-6), 1.0)

    params = np.array([a0, b0, p0])
    lam = 1e-3
    for _ in range(200):
        a, b, p = params
        r = a * p ** ms + b - fs
        jac = np.column_stack([p ** ms,
                               np.ones_like(ms),
                               a * ms * p ** np.maximum(ms - 1, 0.0)])
        grad = jac.T @ r
        hess = jac.T @ jac + lam * np.eye(3)
        try:
            step = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError as exc:
            raise FitError(f"singular system: {exc}") from None
        trial = params - step
        trial[2] = min(max(trial[2], 1e-9), 1.0)
        trial_r = trial[0] * trial[2] ** ms + trial[1] - fs
        if np.linalg.norm(trial_r) < np.linalg.norm(r):
            params = trial
            lam = max(lam / 3.0, 1e-12)
        else:
            lam *= 10.0
        if np.linalg.norm(step) < 1e-12:
            break
    a, b, p = params
    residual = float(np.linalg.norm(a * p ** ms + b - fs))
    return FitResult(float(a), float(b), float(p), residual)


def oracle_adder(n: int) -> Oracle:
    """(a, b) -> b reads (a+b) mod 2^n, z reads the carry, a restored."""
    def f(v: Mapping[str, int]) -> dict[str, int]:
        total = v["a"] + v["b"]
        return {"b": total % (1 << n), "a": v["a"], "z": total >> n}
    return f


def oracle_subtractor(n: int) -> Oracle:
    def f(v: Mapping[str, int]) -> dict[str, int]:
        return {"b": (v["b"] - v["a"]) % (1 << n), "a": v["a"]}
    return f


def oracle_ctrl_add(n: int) -> Oracle:
    def f(v: Mapping[str, int]) -> dict[str, int]:
        total = v["a"] + v["b"]
        if v["ctrl"]:
            return {"ctrl": 1, "b": total % (1 << n), "a": v["a"],
                    "z": total >> n, "g": 0}
        return {"ctrl": 0, "b": v["b"], "a": v["a"], "z": 0, "g": 0}
    return f


def oracle_multiplier(n: int) -> Oracle:
    def f(v: Mapping[str, int]) -> dict[str, int]:
        return {"b": v["b"], "a": v["a"], "p": v["a"] * v["b"]}
    return f


def oracle_taylor(n: int) -> Oracle:
    """Restores everything except y4 = (fc + fp*(x-c) + fpp*(x-c)^2) mod 2^n."""
    def f(v: Mapping[str, int]) -> dict[str, int]:
        delta = v["x"] - v["c"]
        y4 = (v["fc"] + v["fp"] * delta + v["fpp"] * delta * delta) % (1 << n)
        return {"c": v["c"], "x": v["x"], "xc": 0, "fc": v["fc"],
                "fp": v["fp"], "fpp": v["fpp"], "y1": 0, "y2": 0, "y4": y4}
    return f


ORACLES: dict[str, Callable[[int], Oracle]] = {
    "adder": oracle_adder,
    "sub": oracle_subtractor,
    "ctrladd": oracle_ctrl_add,
    "mul": oracle_multiplier,
    "taylor": oracle_taylor,
}
