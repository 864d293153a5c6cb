"""Suzuki-Trotter circuit compilation in four modes.

Every compilation first produces a *schedule*: a time-ordered list of
``Slot(term, time, style)`` entries, where ``style`` picks the gadget
(plain, controlled, or directional). The schedule is then realized gadget by
gadget. Keeping the schedule separate makes term-order properties (palindromes,
segment times) checkable without touching gates.

Time-ordering convention: in ``U_1(t) = prod_l exp(-i alpha_l t P_l)`` term
``l = 0`` acts first. ``U_2(t) = U_1'(t/2) U_1(t/2)``, so the forward sweep
acts first and the reversed sweep second. The five Suzuki segments of order
``p`` are applied with the rightmost factor first.

Controlled modes put the control on qubit 0 and shift the system up by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .circuit import Circuit, merge_adjacent_rotations
from .errors import CompileError
from .gadgets import (
    GadgetRequest,
    build_controlled_gadget,
    build_directional_gadget,
    build_plain_gadget,
)
from .pauli import Hamiltonian

CONTROL_QUBIT = 0

PLAIN, CONTROLLED, DIRECTIONAL = "plain", "controlled", "directional"

_BUILDERS = {
    PLAIN: build_plain_gadget,
    CONTROLLED: build_controlled_gadget,
    DIRECTIONAL: build_directional_gadget,
}


class Mode(str, Enum):
    PLAIN = "plain"
    DIRECTIONAL = "directional"
    CONTROLLED_NAIVE = "controlled-naive"
    CONTROLLED_OPTIMIZED = "controlled-optimized"

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).replace("_", "-"))
        except ValueError:
            raise CompileError(f"unknown mode {value!r}") from None

    @property
    def is_controlled(self) -> bool:
        return self is not Mode.PLAIN


@dataclass(frozen=True)
class Slot:
    term: int
    time: float
    style: str = PLAIN


@dataclass(frozen=True)
class CompileSpec:
    order: int
    time: float
    steps: int = 1
    mode: Mode = Mode.PLAIN
    merge: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        check_order(self.order)
        if int(self.steps) != self.steps or self.steps < 1:
            raise CompileError("steps must be a positive integer")


def check_order(p: int):
    if p == 1:
        return
    if not isinstance(p, int) or p < 2 or p % 2:
        raise CompileError("alpha undefined for this order")


def suzuki_alpha(p: int) -> float:
    """Weight of the outer four segments in the order-``p`` Suzuki recursion."""
    if not isinstance(p, int) or p < 4 or p % 2:
        raise CompileError("alpha undefined for this order")
    return 1.0 / (4.0 - 4.0 ** (1.0 / (p - 1)))


# -- schedules ---------------------------------------------------------------


def first_order_schedule(num_terms, t, style=PLAIN):
    return [Slot(l, t, style) for l in range(num_terms)]


def reversed_first_order_schedule(num_terms, t, style=PLAIN):
    return [Slot(l, t, style) for l in reversed(range(num_terms))]


def trotter_schedule(num_terms: int, t: float, p: int, style: str = PLAIN) -> list[Slot]:
    """Time-ordered slots of ``U_p(t)`` with every gadget in one style."""
    check_order(p)
    if p == 1:
        return first_order_schedule(num_terms, t, style)
    if p == 2:
        return (first_order_schedule(num_terms, t / 2, style)
                + reversed_first_order_schedule(num_terms, t / 2, style))
    a = suzuki_alpha(p)
    outer = trotter_schedule(num_terms, a * t, p - 2, style)
    middle = trotter_schedule(num_terms, (1 - 4 * a) * t, p - 2, style)
    return outer + outer + middle + outer + outer


def controlled_optimized_schedule(num_terms: int, t: float, p: int) -> list[Slot]:
    """Controlled ``U_p(t)`` with no more rotations than the uncontrolled one.

    Order 2: the forward half runs uncontrolled and the reversed half is
    directional, so a 0 control undoes the forward half term by term.
    Order >= 4: two plain outer segments, a recursively controlled middle,
    then two directional outer segments that undo the plain ones on a 0
    control.
    """
    if p == 1:
        raise CompileError("first-order decomposition is not symmetric")
    check_order(p)
    if p == 2:
        return (first_order_schedule(num_terms, t / 2, PLAIN)
                + reversed_first_order_schedule(num_terms, t / 2, DIRECTIONAL))
    a = suzuki_alpha(p)
    plain = trotter_schedule(num_terms, a * t, p - 2, PLAIN)
    middle = controlled_optimized_schedule(num_terms, (1 - 4 * a) * t, p - 2)
    directional = trotter_schedule(num_terms, a * t, p - 2, DIRECTIONAL)
    return plain + plain + middle + directional + directional


def step_schedule(num_terms: int, t: float, p: int, mode: Mode) -> list[Slot]:
    mode = Mode.parse(mode)
    if mode is Mode.PLAIN:
        return trotter_schedule(num_terms, t, p, PLAIN)
    if mode is Mode.CONTROLLED_NAIVE:
        return trotter_schedule(num_terms, t, p, CONTROLLED)
    if p == 1:
        raise CompileError("first-order decomposition is not symmetric")
    if mode is Mode.DIRECTIONAL:
        return trotter_schedule(num_terms, t, p, DIRECTIONAL)
    return controlled_optimized_schedule(num_terms, t, p)


# -- realization -------------------------------------------------------------


def realize(h: Hamiltonian, schedule, controlled: bool) -> Circuit:
    """Turn a schedule into gates on a fresh register."""
    offset = 1 if controlled else 0
    control = CONTROL_QUBIT if controlled else None
    gates = []
    for slot in schedule:
        req = GadgetRequest(h.terms[slot.term], slot.time, offset, control if slot.style != PLAIN else None)
        gates += _BUILDERS[slot.style](req)
    return Circuit(h.num_qubits + offset, tuple(gates), control)


def compile_first_order(h: Hamiltonian, t: float) -> Circuit:
    return realize(h, first_order_schedule(len(h), t), controlled=False)


def compile_reversed_first_order(h: Hamiltonian, t: float) -> Circuit:
    return realize(h, reversed_first_order_schedule(len(h), t), controlled=False)


def compile_second_order(h: Hamiltonian, t: float) -> Circuit:
    return realize(h, trotter_schedule(len(h), t, 2), controlled=False)


def compile_higher_order(h: Hamiltonian, t: float, p: int) -> Circuit:
    suzuki_alpha(p)  # validates p
    return realize(h, trotter_schedule(len(h), t, p), controlled=False)


def compile_step(h: Hamiltonian, t: float, p: int, mode, merge: bool = False) -> Circuit:
    """One Trotter step of duration ``t``."""
    mode = Mode.parse(mode)
    circuit = realize(h, step_schedule(len(h), t, p, mode), controlled=mode.is_controlled)
    return merge_adjacent_rotations(circuit) if merge else circuit


def compile(h: Hamiltonian, spec: CompileSpec) -> Circuit:
    """``spec.steps`` repetitions of one step at ``spec.time / spec.steps``.

    Merging, when requested, runs on each step separately so per-step
    counts stay exact multiples.
    """
    step = compile_step(h, spec.time / spec.steps, spec.order, spec.mode, spec.merge)
    return step.with_gates(step.gates * spec.steps)
