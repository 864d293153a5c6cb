"""Gate-level circuit IR, gate accounting, peephole passes and text export.

Gates are immutable. A CNOT carries a ``polarity``: the control value that
activates it (1 for an ordinary control, 0 for an open control). Keeping open
controls first-class lets gate counts match the drawn circuits; call
:func:`lower_polarity` before export.

Rotation convention: ``RZ(theta) = diag(exp(-i theta/2), exp(+i theta/2))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from .errors import CircuitError

ZERO_ANGLE = 1e-15


class Kind(str, Enum):
    H = "h"
    S = "s"
    SDG = "sdg"
    X = "x"
    CNOT = "cx"
    RZ = "rz"


@dataclass(frozen=True)
class Gate:
    kind: Kind
    qubits: tuple[int, ...]
    polarity: int = 1
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = 2 if self.kind is Kind.CNOT else 1
        if len(self.qubits) != arity:
            raise CircuitError(f"{self.kind.name} takes {arity} qubit(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise CircuitError("negative qubit index")
        if self.kind is Kind.CNOT:
            if self.qubits[0] == self.qubits[1]:
                raise CircuitError("CNOT control equals target")
            if self.polarity not in (0, 1):
                raise CircuitError("CNOT polarity must be 0 (open) or 1")
        elif self.polarity != 1:
            raise CircuitError("polarity applies to CNOT only")
        if self.kind is Kind.RZ:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError("RZ needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise CircuitError("only RZ carries an angle")

    @property
    def control(self) -> int:
        return self.qubits[0]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def __repr__(self):
        if self.kind is Kind.RZ:
            return f"RZ({self.angle!r}, {self.qubits[0]})"
        if self.kind is Kind.CNOT:
            tag = "CNOT" if self.polarity else "CNOT-"
            return f"{tag}({self.qubits[0]}, {self.qubits[1]})"
        return f"{self.kind.name}({self.qubits[0]})"


def H(q):
    return Gate(Kind.H, (q,))


def S(q):
    return Gate(Kind.S, (q,))


def SDG(q):
    return Gate(Kind.SDG, (q,))


def X(q):
    return Gate(Kind.X, (q,))


def CNOT(control, target, polarity=1):
    return Gate(Kind.CNOT, (control, target), polarity=polarity)


def RZ(angle, q):
    return Gate(Kind.RZ, (q,), angle=angle)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list on ``total_qubits`` wires.

    ``control_qubit`` is set for controlled and directional compilations; all
    other wires are then system qubits.
    """

    total_qubits: int
    gates: tuple[Gate, ...] = ()
    control_qubit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.total_qubits < 1:
            raise CircuitError("circuit needs at least one qubit")
        if self.control_qubit is not None and not 0 <= self.control_qubit < self.total_qubits:
            raise CircuitError(f"control qubit {self.control_qubit} out of range")
        for g in self.gates:
            if max(g.qubits) >= self.total_qubits:
                raise CircuitError(f"{g!r} references a qubit outside [0, {self.total_qubits})")

    @property
    def system_qubits(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.total_qubits) if q != self.control_qubit)

    def with_gates(self, gates) -> "Circuit":
        return Circuit(self.total_qubits, tuple(gates), self.control_qubit)

    def __add__(self, other: "Circuit") -> "Circuit":
        if (self.total_qubits, self.control_qubit) != (other.total_qubits, other.control_qubit):
            raise CircuitError("cannot concatenate circuits on different registers")
        return self.with_gates(self.gates + other.gates)

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class GateCounts:
    rz_count: int = 0
    cnot_count: int = 0
    clifford_single_count: int = 0
    x_count: int = 0
    # Subset of cnot_count with an open control.
    open_cnot_count: int = 0


def count_gates(c: Circuit) -> GateCounts:
    """Tally gates by kind. Zero-angle rotations are still counted."""
    rz = cnot = cliff = x = open_ = 0
    for g in c.gates:
        if g.kind is Kind.RZ:
            rz += 1
        elif g.kind is Kind.CNOT:
            cnot += 1
            open_ += g.polarity == 0
        elif g.kind is Kind.X:
            x += 1
        else:
            cliff += 1
    return GateCounts(rz, cnot, cliff, x, open_)


_INVERSE_PAIRS = {
    (Kind.H, Kind.H),
    (Kind.X, Kind.X),
    (Kind.S, Kind.SDG),
    (Kind.SDG, Kind.S),
    (Kind.CNOT, Kind.CNOT),
}


def merge_adjacent_rotations(c: Circuit) -> Circuit:
    """Fuse same-wire rotations and cancel the conjugations they expose.

    A single left-to-right sweep with a per-wire stack: each incoming gate is
    compared with the most recent surviving gate on its wires. Self-inverse
    pairs on identical wires vanish, RZ pairs fuse, and a fused RZ whose angle
    is zero is dropped, which in turn lets the surrounding basis changes and
    CNOT ladders cancel. Every rewrite is an exact identity.
    """
    out: list[Gate | None] = []
    last: list[list[int]] = [[] for _ in range(c.total_qubits)]

    for g in c.gates:
        prev_idx = None
        stacks = [last[q] for q in g.qubits]
        if all(stacks):
            tops = {s[-1] for s in stacks}
            if len(tops) == 1:
                prev_idx = tops.pop()
        prev = out[prev_idx] if prev_idx is not None else None

        if prev is not None and prev.qubits == g.qubits:
            if prev.kind is Kind.RZ and g.kind is Kind.RZ:
                angle = prev.angle + g.angle
                if abs(angle) <= ZERO_ANGLE:
                    _drop(out, last, prev_idx)
                else:
                    out[prev_idx] = RZ(angle, g.qubits[0])
                continue
            if (prev.kind, g.kind) in _INVERSE_PAIRS and prev.polarity == g.polarity:
                _drop(out, last, prev_idx)
                continue

        out.append(g)
        for q in g.qubits:
            last[q].append(len(out) - 1)

    return c.with_gates(g for g in out if g is not None)


def _drop(out, last, idx):
    for q in out[idx].qubits:
        last[q].pop()
    out[idx] = None


def lower_polarity(c: Circuit) -> Circuit:
    """Rewrite each open-control CNOT as ``X(c) CNOT(c, t) X(c)``."""
    gates = []
    for g in c.gates:
        if g.kind is Kind.CNOT and g.polarity == 0:
            gates += [X(g.control), CNOT(g.control, g.target), X(g.control)]
        else:
            gates.append(g)
    return c.with_gates(gates)


def emit_text(c: Circuit) -> str:
    """Serialize a polarity-lowered circuit to the line-oriented text format."""
    lines = [f"qubits {c.total_qubits}"]
    if c.control_qubit is not None:
        lines.append(f"control q[{c.control_qubit}]")
    for g in c.gates:
        if g.kind is Kind.CNOT:
            if g.polarity == 0:
                raise CircuitError("lower polarity before export")
            lines.append(f"cx q[{g.control}],q[{g.target}]")
        elif g.kind is Kind.RZ:
            # repr is the shortest string that round-trips the double
            lines.append(f"rz({g.angle!r}) q[{g.qubits[0]}]")
        else:
            lines.append(f"{g.kind.value} q[{g.qubits[0]}]")
    return "\n".join(lines) + "\n"


_GATE_LINE = re.compile(
    r"^(?:(?P<name>h|s|sdg|x) q\[(?P<q>\d+)\]"
    r"|cx q\[(?P<c>\d+)\],q\[(?P<t>\d+)\]"
    r"|rz\((?P<angle>[^)]+)\) q\[(?P<rq>\d+)\])$"
)


def parse_text(text: str) -> Circuit:
    """Read back the output of :func:`emit_text`."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("qubits "):
        raise CircuitError("missing 'qubits <n>' header")
    total = int(lines[0].split()[1])
    control = None
    body = lines[1:]
    if body and body[0].startswith("control "):
        m = re.fullmatch(r"control q\[(\d+)\]", body[0])
        if not m:
            raise CircuitError("malformed control line")
        control = int(m.group(1))
        body = body[1:]
    gates = []
    for lineno, line in enumerate(body, start=len(lines) - len(body) + 1):
        m = _GATE_LINE.match(line)
        if not m:
            raise CircuitError(f"unrecognized gate at line {lineno}: {line!r}")
        if m.group("name"):
            gates.append(Gate(Kind(m.group("name")), (int(m.group("q")),)))
        elif m.group("c"):
            gates.append(CNOT(int(m.group("c")), int(m.group("t"))))
        else:
            gates.append(RZ(float(m.group("angle")), int(m.group("rq"))))
    return Circuit(total, tuple(gates), control)
