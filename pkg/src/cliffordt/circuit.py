"""Circuit IR: composition, lowering, scheduling, metrics, and text format.

Circuit text format (bit exact, UTF-8, newline terminated):

    qubits N
    register <name> <lo>..<hi> <role>     # zero or more, roles below
    <mnemonic> <q> [<q> ...]              # one gate per line

Gate lines use the mnemonics h, t, tdg, s, sdg, x, cnot, swap, ccx, cswap
with decimal qubit operands.  ``#`` starts a comment that runs to end of
line; blank lines are ignored.  Register roles are input, ancilla, output,
garbage and restored-input; ancilla registers must enter the circuit
holding the constant 0.  Unknown mnemonics or roles are hard errors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import gates as G
from .errors import DomainError, ParseError, ResourceError
from .gates import Gate
from .state import MAX_SIM_QUBITS, StateVector, apply_gate, new_basis_state

ROLES = ("input", "ancilla", "output", "garbage", "restored-input")


@dataclass(frozen=True)
class Register:
    """A named, contiguous run of qubits with a declared role.

    Bit i of the register value lives on qubit ``start + i`` (little
    endian).  Registers with role ``ancilla`` require initial value 0.
    """

    name: str
    start: int
    size: int
    role: str

    def __post_init__(self):
        if self.size < 1 or self.start < 0:
            raise DomainError(f"bad register extent {self.name}")
        if self.role not in ROLES:
            raise DomainError(f"unknown register role {self.role!r}")

    @property
    def stop(self) -> int:
        return self.start + self.size

    def qubits(self) -> range:
        return range(self.start, self.stop)


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered register list; must partition [0, n_qubits) exactly."""

    registers: tuple[Register, ...]

    def validate(self, n_qubits: int) -> None:
        names = [r.name for r in self.registers]
        if len(set(names)) != len(names):
            raise DomainError("duplicate register name")
        covered = sorted(self.registers, key=lambda r: r.start)
        cursor = 0
        for r in covered:
            if r.start != cursor:
                raise DomainError(
                    f"registers do not partition the qubit range at {r.start}"
                )
            cursor = r.stop
        if cursor != n_qubits:
            raise DomainError("registers do not cover every qubit")

    def register(self, name: str) -> Register:
        for r in self.registers:
            if r.name == name:
                return r
        raise DomainError(f"no register named {name!r}")

    def qubits_with_role(self, role: str) -> list[int]:
        return [q for r in self.registers if r.role == role for q in r.qubits()]


def default_layout(n_qubits: int) -> RegisterLayout:
    return RegisterLayout((Register("q", 0, n_qubits, "input"),))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a register-structured qubit space."""

    n_qubits: int
    ops: tuple[Gate, ...] = ()
    layout: RegisterLayout = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DomainError("circuit needs at least one qubit")
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.layout is None:
            object.__setattr__(self, "layout", default_layout(self.n_qubits))
        self.layout.validate(self.n_qubits)
        for g in self.ops:
            if any(q >= self.n_qubits for q in g.qubits):
                raise DomainError(
                    f"gate {g.kind} {g.qubits} exceeds {self.n_qubits} qubits"
                )


@dataclass(frozen=True)
class ResourceReport:
    """Fault-tolerance cost metrics of a circuit after Clifford+T lowering."""

    t_count: int
    t_depth: int
    depth: int
    qubit_cost: int
    ancilla_count: int
    garbage_count: int
    gate_histogram: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "t_count": self.t_count,
            "t_depth": self.t_depth,
            "depth": self.depth,
            "qubit_cost": self.qubit_cost,
            "ancilla_count": self.ancilla_count,
            "garbage_count": self.garbage_count,
            "gate_histogram": dict(sorted(self.gate_histogram.items())),
        }

    def to_text(self) -> str:
        lines = [
            f"t_count: {self.t_count}",
            f"t_depth: {self.t_depth}",
            f"depth: {self.depth}",
            f"qubit_cost: {self.qubit_cost}",
            f"ancilla_count: {self.ancilla_count}",
            f"garbage_count: {self.garbage_count}",
        ]
        for kind in sorted(self.gate_histogram):
            lines.append(f"gate.{kind}: {self.gate_histogram[kind]}")
        return "\n".join(lines) + "\n"


def compose(a: Circuit, b: Circuit, qubit_map: dict[int, int] | None = None,
            layout: RegisterLayout | None = None) -> Circuit:
    """Concatenate two circuits, optionally embedding ``b`` via a qubit map.

    Without a map the circuits must have equal width.  The merged layout is
    the caller's to supply (generators know their register roles); it
    defaults to the layout of ``a``.
    """
    if qubit_map is None:
        if a.n_qubits != b.n_qubits:
            raise DomainError("qubit counts differ and no qubit map given")
        mapped = b.ops
    else:
        if len(set(qubit_map.values())) != len(qubit_map):
            raise DomainError("qubit map collides")
        if set(qubit_map) != set(range(b.n_qubits)):
            raise DomainError("qubit map must cover every qubit of b")
        if any(v >= a.n_qubits or v < 0 for v in qubit_map.values()):
            raise DomainError("qubit map leaves the target circuit")
        mapped = tuple(
            Gate(g.kind, tuple(qubit_map[q] for q in g.qubits)) for g in b.ops
        )
    return Circuit(a.n_qubits, a.ops + tuple(mapped), layout or a.layout)


def inverse_circuit(c: Circuit) -> Circuit:
    """Reverse the gate order and invert each gate."""
    return Circuit(c.n_qubits, tuple(G.inverse(g) for g in reversed(c.ops)), c.layout)


def lower_to_clifford_t(c: Circuit) -> Circuit:
    """Expand SWAP, Toffoli and Fredkin into Clifford+T primitives.

    Output gates all lie in {h, t, tdg, s, sdg, x, cnot}; the circuit is
    functionally unchanged up to one global phase.
    """
    out: list[Gate] = []
    for g in c.ops:
        if g.kind == "ccx":
            out.extend(G.decompose_toffoli(*g.qubits))
        elif g.kind == "cswap":
            out.extend(G.decompose_fredkin(*g.qubits))
        elif g.kind == "swap":
            out.extend(G.decompose_swap(*g.qubits))
        else:
            out.append(g)
    return Circuit(c.n_qubits, tuple(out), c.layout)


def schedule_layers(c: Circuit) -> list[list[Gate]]:
    """Greedy ASAP schedule: each gate lands in the earliest layer after
    every earlier gate that touches one of its qubits.

    Gates within a layer act on pairwise disjoint qubits, and reading the
    layers in order preserves the per-qubit gate order of the input.  No
    commutation analysis is attempted; parallelism is qubit disjointness
    only.
    """
    layers: list[list[Gate]] = []
    frontier: dict[int, int] = {}
    for g in c.ops:
        at = max((frontier.get(q, -1) for q in g.qubits), default=-1) + 1
        if at == len(layers):
            layers.append([])
        layers[at].append(g)
        for q in g.qubits:
            frontier[q] = at
    return layers


def resources(c: Circuit) -> ResourceReport:
    """Resource metrics, measured on the Clifford+T lowering of ``c``.

    T-count totals t and tdg gates; T-depth counts schedule layers holding
    at least one of them; depth is the total layer count.  Ancilla and
    garbage counts are read from the register layout.
    """
    lowered = lower_to_clifford_t(c)
    hist = Counter(g.kind for g in lowered.ops)
    layers = schedule_layers(lowered)
    t_kinds = {"t", "tdg"}
    return ResourceReport(
        t_count=hist["t"] + hist["tdg"],
        t_depth=sum(1 for layer in layers if any(g.kind in t_kinds for g in layer)),
        depth=len(layers),
        qubit_cost=c.n_qubits,
        ancilla_count=len(c.layout.qubits_with_role("ancilla")),
        garbage_count=len(c.layout.qubits_with_role("garbage")),
        gate_histogram=dict(hist),
    )


def serialize(c: Circuit) -> str:
    """Render a circuit in the text format (see module docstring)."""
    lines = [f"qubits {c.n_qubits}"]
    for r in c.layout.registers:
        lines.append(f"register {r.name} {r.start}..{r.stop - 1} {r.role}")
    for g in c.ops:
        lines.append(" ".join([g.kind] + [str(q) for q in g.qubits]))
    return "\n".join(lines) + "\n"


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} is not an integer: {token!r}") from None


def parse(text: str) -> Circuit:
    """Parse the text format back into a circuit.

    ``parse(serialize(c))`` is structurally identical to ``c``.  Errors
    report the offending line number and reason.
    """
    n_qubits = None
    registers: list[Register] = []
    first_register_line = 0
    ops: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n_qubits is None:
            if tokens[0] != "qubits" or len(tokens) != 2:
                raise ParseError(lineno, "expected 'qubits N' header")
            n_qubits = _parse_int(tokens[1], lineno, "qubit count")
            if n_qubits < 1:
                raise ParseError(lineno, "qubit count must be positive")
            continue
        if tokens[0] == "qubits":
            raise ParseError(lineno, "duplicate 'qubits' header")
        if tokens[0] == "register":
            if len(tokens) != 4:
                raise ParseError(lineno, "expected 'register name lo..hi role'")
            _, name, span, role = tokens
            lo_hi = span.split("..")
            if len(lo_hi) != 2:
                raise ParseError(lineno, f"malformed register range {span!r}")
            lo = _parse_int(lo_hi[0], lineno, "register low index")
            hi = _parse_int(lo_hi[1], lineno, "register high index")
            if role not in ROLES:
                raise ParseError(lineno, f"unknown register role {role!r}")
            if not 0 <= lo <= hi < n_qubits:
                raise ParseError(lineno, f"register range {span} out of bounds")
            if not registers:
                first_register_line = lineno
            registers.append(Register(name, lo, hi - lo + 1, role))
            continue
        kind = tokens[0]
        if kind not in G.GATE_ARITY:
            raise ParseError(lineno, f"unknown gate {kind!r}")
        want = G.GATE_ARITY[kind]
        if len(tokens) - 1 != want:
            raise ParseError(lineno, f"{kind} takes {want} qubit indices")
        qubits = tuple(_parse_int(tok, lineno, "qubit index") for tok in tokens[1:])
        if any(q < 0 or q >= n_qubits for q in qubits):
            raise ParseError(lineno, f"qubit index out of range in {line!r}")
        if len(set(qubits)) != len(qubits):
            raise ParseError(lineno, "duplicate qubit")
        ops.append(Gate(kind, qubits))
    if n_qubits is None:
        raise ParseError(0, "missing 'qubits' header")
    layout = RegisterLayout(tuple(registers)) if registers else None
    try:
        return Circuit(n_qubits, tuple(ops), layout)
    except DomainError as exc:
        raise ParseError(first_register_line, str(exc)) from None


def simulate(c: Circuit, input_basis: int) -> StateVector:
    """Full statevector of the circuit run on one basis input.

    Folds gate application over the ops; capped at 24 qubits.  Pure and
    reentrant, so distinct basis inputs may be evaluated concurrently.
    """
    if c.n_qubits > MAX_SIM_QUBITS:
        raise ResourceError(
            f"{c.n_qubits} qubits exceeds the {MAX_SIM_QUBITS}-qubit "
            "statevector ceiling"
        )
    state = new_basis_state(c.n_qubits, input_basis)
    for g in c.ops:
        state = apply_gate(state, g)
    return state


def is_permutation_circuit(c: Circuit) -> bool:
    """True when every gate is a classical basis permutation (X, CNOT,
    SWAP, Toffoli, Fredkin), so basis states map to basis states with
    amplitude exactly 1."""
    return all(g.kind in G.PERMUTATION_KINDS for g in c.ops)


def permutation_output(c: Circuit, input_basis: int) -> int:
    """Exact basis output of a permutation circuit, at any width.

    This is statevector simulation specialized to the one-hot case: the
    amplitude stays pinned at 1 on a single basis state, so only the index
    needs tracking.  Agrees with ``simulate`` wherever both apply.
    """
    if not 0 <= input_basis < (1 << c.n_qubits):
        raise DomainError(f"basis index {input_basis} out of range")
    j = input_basis
    for g in c.ops:
        k = g.kind
        q = g.qubits
        if k == "x":
            j ^= 1 << q[0]
        elif k == "cnot":
            if (j >> q[0]) & 1:
                j ^= 1 << q[1]
        elif k == "ccx":
            if (j >> q[0]) & 1 and (j >> q[1]) & 1:
                j ^= 1 << q[2]
        elif k == "swap":
            a, b = (j >> q[0]) & 1, (j >> q[1]) & 1
            if a != b:
                j ^= (1 << q[0]) | (1 << q[1])
        elif k == "cswap":
            if (j >> q[0]) & 1:
                a, b = (j >> q[1]) & 1, (j >> q[2]) & 1
                if a != b:
                    j ^= (1 << q[1]) | (1 << q[2])
        else:
            raise DomainError(f"{k} is not a basis permutation gate")
    return j
