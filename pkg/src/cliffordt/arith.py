"""Generators for reversible integer arithmetic over {X, CNOT, Toffoli}.

All circuits are garbage-free ripple-carry designs: carries are computed
into the addend register, consumed, and uncomputed in place, so the only
overhead qubits are declared ancillae that enter as 0.  Arithmetic is
modular in the register width.  Registers are contiguous and little
endian (bit i of a register sits on qubit base+i); any wire interleaving
seen in circuit diagrams is purely a drawing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .circuit import Circuit, Register, RegisterLayout
from .errors import DomainError
from .gates import Gate, ccx, cnot, x


@dataclass(frozen=True)
class ArithInstance:
    """A generated arithmetic circuit plus its integer encoding.

    ``input_names`` lists the registers the caller chooses freely, in
    enumeration order; ``constants`` pins registers to fixed values; every
    other register is an ancilla that must enter as 0.  ``encode`` packs
    named integer values into a basis index and ``decode`` unpacks one.
    """

    n_bits: int
    circuit: Circuit
    input_names: tuple[str, ...]
    constants: dict[str, int] = field(default_factory=dict)

    def encode(self, values: Mapping[str, int]) -> int:
        index = 0
        for reg in self.circuit.layout.registers:
            if reg.name in values:
                v = values[reg.name]
            elif reg.name in self.constants:
                v = self.constants[reg.name]
            else:
                v = 0
            if not 0 <= v < (1 << reg.size):
                raise DomainError(
                    f"value {v} does not fit register {reg.name} ({reg.size} bits)"
                )
            index |= v << reg.start
        return index

    def decode(self, basis_index: int) -> dict[str, int]:
        return {
            reg.name: (basis_index >> reg.start) & ((1 << reg.size) - 1)
            for reg in self.circuit.layout.registers
        }

    def input_space(self) -> Iterator[dict[str, int]]:
        """Every assignment of the free inputs (ancillae 0, constants pinned)."""
        regs = [self.circuit.layout.register(n) for n in self.input_names]

        def rec(i: int, acc: dict[str, int]) -> Iterator[dict[str, int]]:
            if i == len(regs):
                yield dict(acc)
                return
            for v in range(1 << regs[i].size):
                acc[regs[i].name] = v
                yield from rec(i + 1, acc)

        yield from rec(0, {})


def _add_core(b: list[int], a: list[int], z: int | None) -> list[Gate]:
    """Ripple-carry sum of register a into register b, in place.

    Leaves b holding (a+b) mod 2^n and a restored.  When ``z`` is given it
    receives the carry-out; when None the addition is modular and the
    carry circuitry is dropped entirely.

    Carries c_i are built transiently on the a wires via the identity
    (a^b)(a^c) = a ^ MAJ(a,b,c), then consumed and uncomputed on the way
    back down.  The n=1 carry needs no preload CNOT because b_0 is never
    premixed with a_0; the general preload would double-count a_0 there.
    """
    n = len(b)
    ops: list[Gate] = []
    for i in range(1, n):
        ops.append(cnot(a[i], b[i]))
    if z is not None and n >= 2:
        ops.append(cnot(a[n - 1], z))
    for i in range(n - 2, 0, -1):
        ops.append(cnot(a[i], a[i + 1]))
    for i in range(n - 1):
        ops.append(ccx(b[i], a[i], a[i + 1]))
    if z is not None:
        ops.append(ccx(b[n - 1], a[n - 1], z))
    for i in range(n - 1, 0, -1):
        ops.append(cnot(a[i], b[i]))
        ops.append(ccx(b[i - 1], a[i - 1], a[i]))
    ops.append(cnot(a[0], b[0]))
    for i in range(1, n - 1):
        ops.append(cnot(a[i], a[i + 1]))
    for i in range(1, n):
        ops.append(cnot(a[i], b[i]))
    return ops


def _sub_core(b: list[int], a: list[int]) -> list[Gate]:
    """b <- (b - a) mod 2^n via the complement identity b-a = ~(~b + a)."""
    flips = [x(q) for q in b]
    return flips + _add_core(b, a, None) + flips


def _ctrl_add_core(ctrl: int, b: list[int], a: list[int],
                   z: int, scratch: int) -> list[Gate]:
    """Conditional ripple-carry add with carry-out.

    When ctrl is 1: b <- (a+b) mod 2^n and z <- carry.  When ctrl is 0
    every wire is restored.  Carry generation runs unconditionally and is
    undone in place; only the writes that land the sum in b (and the copy
    of the carry into z) are controlled.  The carry-out itself is staged
    through ``scratch``, which always returns to 0, because a direct
    triply-controlled write is outside the gate set.
    """
    n = len(b)
    ops: list[Gate] = []
    for i in range(1, n):
        ops.append(cnot(a[i], b[i]))
    if n >= 2:
        ops.append(ccx(ctrl, a[n - 1], z))
    for i in range(n - 2, 0, -1):
        ops.append(cnot(a[i], a[i + 1]))
    for i in range(n - 1):
        ops.append(ccx(b[i], a[i], a[i + 1]))
    ops.append(ccx(b[n - 1], a[n - 1], scratch))
    ops.append(ccx(ctrl, scratch, z))
    ops.append(ccx(b[n - 1], a[n - 1], scratch))
    for i in range(n - 1, 0, -1):
        ops.append(ccx(ctrl, a[i], b[i]))
        ops.append(ccx(b[i - 1], a[i - 1], a[i]))
    ops.append(ccx(ctrl, a[0], b[0]))
    for i in range(1, n - 1):
        ops.append(cnot(a[i], a[i + 1]))
    for i in range(1, n):
        ops.append(cnot(a[i], b[i]))
    return ops


def _ctrl_add_mod_core(ctrl: int, b: list[int], a: list[int]) -> list[Gate]:
    """Conditional modular add (no carry-out, no scratch)."""
    n = len(b)
    ops: list[Gate] = []
    for i in range(1, n):
        ops.append(cnot(a[i], b[i]))
    for i in range(n - 2, 0, -1):
        ops.append(cnot(a[i], a[i + 1]))
    for i in range(n - 1):
        ops.append(ccx(b[i], a[i], a[i + 1]))
    for i in range(n - 1, 0, -1):
        ops.append(ccx(ctrl, a[i], b[i]))
        ops.append(ccx(b[i - 1], a[i - 1], a[i]))
    ops.append(ccx(ctrl, a[0], b[0]))
    for i in range(1, n - 1):
        ops.append(cnot(a[i], a[i + 1]))
    for i in range(1, n):
        ops.append(cnot(a[i], b[i]))
    return ops


def _mod_mul_ops(b: list[int], a: list[int], p: list[int]) -> list[Gate]:
    """p <- (a*b) mod 2^n by shift-and-add, b and a restored.

    Stage 0 is a Toffoli array writing the first partial product; stage k
    conditionally adds the low n-k bits of a into p[k:], the shift being
    realized purely by wiring.
    """
    n = len(b)
    ops = [ccx(b[0], a[i], p[i]) for i in range(n)]
    for k in range(1, n):
        ops += _ctrl_add_mod_core(b[k], p[k:], a[: n - k])
    return ops


def build_adder(n: int) -> ArithInstance:
    """Ripple-carry adder with no input carry: 2n+1 qubits.

    Register b (n, sum output), register a (n, restored), register z
    (one ancilla) reading the carry-out s_n.  Exactly one ancilla and no
    garbage outputs.
    """
    if n < 1:
        raise DomainError("adder width must be at least 1")
    b = list(range(n))
    a = list(range(n, 2 * n))
    z = 2 * n
    layout = RegisterLayout((
        Register("b", 0, n, "output"),
        Register("a", n, n, "restored-input"),
        Register("z", 2 * n, 1, "ancilla"),
    ))
    circ = Circuit(2 * n + 1, tuple(_add_core(b, a, z)), layout)
    return ArithInstance(n, circ, ("b", "a"))


def build_subtractor(n: int) -> ArithInstance:
    """Subtractor on 2n qubits: b reads (b-a) mod 2^n, a restored.

    The adder core is conjugated by X gates on b; the carry-out wire and
    its circuitry are dropped since the complemented sum never needs s_n.
    """
    if n < 1:
        raise DomainError("subtractor width must be at least 1")
    b = list(range(n))
    a = list(range(n, 2 * n))
    layout = RegisterLayout((
        Register("b", 0, n, "output"),
        Register("a", n, n, "restored-input"),
    ))
    circ = Circuit(2 * n, tuple(_sub_core(b, a)), layout)
    return ArithInstance(n, circ, ("b", "a"))


def build_ctrl_add(n: int) -> ArithInstance:
    """Conditional adder on 2n+3 qubits.

    ctrl=1: b reads (a+b) mod 2^n with the carry in z.  ctrl=0: every
    register is restored.  ctrl and a are restored either way.  The g
    ancilla stages the carry and always returns to 0 (inside the
    multiplier this wire is borrowed from the product register, which is
    why the product register carries one extra qubit).
    """
    if n < 1:
        raise DomainError("controlled adder width must be at least 1")
    ctrl = 0
    b = list(range(1, n + 1))
    a = list(range(n + 1, 2 * n + 1))
    z, g = 2 * n + 1, 2 * n + 2
    layout = RegisterLayout((
        Register("ctrl", 0, 1, "restored-input"),
        Register("b", 1, n, "output"),
        Register("a", n + 1, n, "restored-input"),
        Register("z", 2 * n + 1, 1, "ancilla"),
        Register("g", 2 * n + 2, 1, "ancilla"),
    ))
    circ = Circuit(2 * n + 3, tuple(_ctrl_add_core(ctrl, b, a, z, g)), layout)
    return ArithInstance(n, circ, ("ctrl", "b", "a"))


def build_multiplier(n: int) -> ArithInstance:
    """Shift-and-add multiplier on 4n+1 qubits.

    Registers b (n) and a (n) are restored; the product register p has
    2n+1 ancilla qubits, of which p[0..2n-1] read a*b and p[2n] returns
    to 0.  One Toffoli array forms the first partial product; each later
    stage is a conditional adder placed one bit higher, so every shift is
    free.  Stage k borrows p[k+n+1] as its carry scratch, which is still 0
    because the running sum cannot have reached that bit yet.
    """
    if n < 1:
        raise DomainError("multiplier width must be at least 1")
    b = list(range(n))
    a = list(range(n, 2 * n))
    p = list(range(2 * n, 4 * n + 1))
    ops = [ccx(b[0], a[i], p[i]) for i in range(n)]
    for k in range(1, n):
        ops += _ctrl_add_core(b[k], p[k:k + n], a, p[k + n], p[k + n + 1])
    layout = RegisterLayout((
        Register("b", 0, n, "restored-input"),
        Register("a", n, n, "restored-input"),
        Register("p", 2 * n, 2 * n + 1, "ancilla"),
    ))
    circ = Circuit(4 * n + 1, tuple(ops), layout)
    return ArithInstance(n, circ, ("b", "a"))


#: Taylor register names in qubit order; each holds n bits.
TAYLOR_REGISTERS = ("c", "x", "xc", "fc", "fp", "fpp", "y1", "y2", "y4")


def build_taylor(n: int, f_c: int, fp_c: int, fpp_half_c: int, c: int) -> ArithInstance:
    """Second-order polynomial evaluator on 9n qubits.

    Computes y4 = (f_c + fp_c*(x-c) + fpp_half_c*(x-c)^2) mod 2^n for the
    free input x, with the constants supplied as pinned register contents.
    Intermediates are all n bits wide, so the products use the modular
    multiplier rather than the full-width one.

    Forward pass: x <- x-c; copy x-c into xc (the multiplier needs two
    independent factor registers); y1 <- fp*(x-c); y2 <- (x-c)^2;
    y4 <- fpp*y2; y1 <- y1+fc; y4 <- y4+y1.  The scratch then unwinds in
    reverse (unmultiply y2, strip fc from y1, unmultiply y1, uncopy xc,
    re-add c to x), leaving only y4 changed.  All constants are unsigned
    residues mod 2^n; any fixed-point scaling is the caller's convention.
    """
    if n < 1:
        raise DomainError("width must be at least 1")
    consts = {"fc": f_c, "fp": fp_c, "fpp": fpp_half_c, "c": c}
    for name, v in consts.items():
        if not 0 <= v < (1 << n):
            raise DomainError(f"constant {name}={v} outside [0, 2^{n})")
    r = {name: list(range(i * n, (i + 1) * n))
         for i, name in enumerate(TAYLOR_REGISTERS)}
    ops: list[Gate] = []
    ops += _sub_core(r["x"], r["c"])
    ops += [cnot(r["x"][i], r["xc"][i]) for i in range(n)]
    ops += _mod_mul_ops(r["x"], r["fp"], r["y1"])
    ops += _mod_mul_ops(r["x"], r["xc"], r["y2"])
    ops += _mod_mul_ops(r["y2"], r["fpp"], r["y4"])
    ops += _add_core(r["y1"], r["fc"], None)
    ops += _add_core(r["y4"], r["y1"], None)
    # garbage removal: every scratch register retraces its construction
    ops += _reversed_ops(_mod_mul_ops(r["x"], r["xc"], r["y2"]))
    ops += _sub_core(r["y1"], r["fc"])
    ops += _reversed_ops(_mod_mul_ops(r["x"], r["fp"], r["y1"]))
    ops += [cnot(r["x"][i], r["xc"][i]) for i in range(n)]
    ops += _add_core(r["x"], r["c"], None)
    roles = {"c": "restored-input", "x": "restored-input", "fc": "restored-input",
             "fp": "restored-input", "fpp": "restored-input"}
    layout = RegisterLayout(tuple(
        Register(name, i * n, n, roles.get(name, "ancilla"))
        for i, name in enumerate(TAYLOR_REGISTERS)
    ))
    circ = Circuit(9 * n, tuple(ops), layout)
    return ArithInstance(n, circ, ("x",), constants=consts)


def _reversed_ops(ops: list[Gate]) -> list[Gate]:
    # X/CNOT/Toffoli are self-inverse, so reversal alone inverts the block
    return list(reversed(ops))


BUILDERS: dict[str, Callable[..., ArithInstance]] = {
    "adder": build_adder,
    "sub": build_subtractor,
    "ctrladd": build_ctrl_add,
    "mul": build_multiplier,
    "taylor": build_taylor,
}
