"""Single-term evolution circuits for ``exp(-i t alpha P)``.

All three builders share the same frame: per-qubit basis change to Z, a
CNOT parity ladder up the support in ascending index order, a central
rotation on the highest-index support qubit, then the mirror image. Only the
central rotation differs:

* plain        ``RZ(2 t alpha)``
* controlled   ``CNOT(c, r) RZ(-t alpha) CNOT(c, r) RZ(+t alpha)`` (two rotations)
* directional  ``CNOT-(c, r) RZ(2 t alpha) CNOT-(c, r)`` (open controls, one rotation)

The directional form evolves forward when the control is 1 and backward when
it is 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import CNOT, H, RZ, S, SDG, Gate
from .errors import GadgetError
from .pauli import PauliString


@dataclass(frozen=True)
class GadgetRequest:
    term: PauliString
    time: float
    system_offset: int = 0
    control_qubit: int | None = None

    def __post_init__(self):
        if self.term.is_identity:
            raise GadgetError("identity term has no gadget")
        if self.control_qubit is not None:
            lo, hi = self.system_offset, self.system_offset + self.term.num_qubits
            if lo <= self.control_qubit < hi:
                raise GadgetError("control qubit overlaps the system register")

    @property
    def angle(self) -> float:
        return 2.0 * self.time * self.term.coefficient

    def wires(self) -> list[int]:
        return [self.system_offset + i for i in self.term.support]


def _basis_in(letter, q):
    if letter == "X":
        return [H(q)]
    if letter == "Y":
        return [SDG(q), H(q)]
    return []


def _basis_out(letter, q):
    if letter == "X":
        return [H(q)]
    if letter == "Y":
        return [H(q), S(q)]
    return []


def _frame(req: GadgetRequest, core: list[Gate]) -> list[Gate]:
    wires = req.wires()
    letters = [req.term.word[i] for i in req.term.support]
    pre = [g for letter, q in zip(letters, wires) for g in _basis_in(letter, q)]
    post = [g for letter, q in zip(letters, wires) for g in _basis_out(letter, q)]
    ladder = [CNOT(a, b) for a, b in zip(wires, wires[1:])]
    return pre + ladder + core + ladder[::-1] + post


def build_plain_gadget(req: GadgetRequest) -> list[Gate]:
    if req.control_qubit is not None:
        raise GadgetError("plain gadget takes no control qubit")
    r = req.wires()[-1]
    return _frame(req, [RZ(req.angle, r)])


def build_controlled_gadget(req: GadgetRequest) -> list[Gate]:
    if req.control_qubit is None:
        raise GadgetError("controlled gadget needs control qubit")
    c, r = req.control_qubit, req.wires()[-1]
    half = req.angle / 2
    return _frame(req, [CNOT(c, r), RZ(-half, r), CNOT(c, r), RZ(half, r)])


def build_directional_gadget(req: GadgetRequest) -> list[Gate]:
    if req.control_qubit is None:
        raise GadgetError("directional gadget needs control qubit")
    c, r = req.control_qubit, req.wires()[-1]
    return _frame(req, [CNOT(c, r, polarity=0), RZ(req.angle, r), CNOT(c, r, polarity=0)])
