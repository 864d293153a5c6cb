"""Dense numerical checks for compiled circuits.

Two independent routes to every matrix compared here:

* circuit route: :func:`circuit_unitary` pushes the identity through the gate
  kernels in :mod:`trotterc._kernels`;
* operator route: Kronecker products of Pauli matrices
  (:func:`trotterc.pauli.pauli_matrix`), closed-form single-term exponentials
  and a Hermitian eigendecomposition for ``exp(-i t H)``.

Nothing on the operator route touches the gate IR.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .circuit import Circuit, Kind
from .compiler import Mode, Slot, compile_step, trotter_schedule
from .errors import MatrixTooLarge, TrotterError
from .pauli import DEFAULT_QUBIT_CAP, Hamiltonian, PauliString, hamiltonian_matrix, pauli_matrix

ERROR_FLOOR = 1e-14

_OPCODES = {
    Kind.H: _kernels.OP_H,
    Kind.S: _kernels.OP_S,
    Kind.SDG: _kernels.OP_SDG,
    Kind.X: _kernels.OP_X,
    Kind.CNOT: _kernels.OP_CNOT,
    Kind.RZ: _kernels.OP_RZ,
}


def _check_cap(n, cap):
    if n > cap:
        raise MatrixTooLarge(
            f"too many qubits for dense evaluation: {n} > cap {cap}; try a smaller fixture"
        )


def to_program(c: Circuit) -> tuple[np.ndarray, np.ndarray]:
    """Flatten a circuit to ``(ops, angles)`` arrays for the kernels."""
    ops = np.zeros((len(c.gates), 4), dtype=np.int64)
    angles = np.zeros(len(c.gates), dtype=np.float64)
    for k, g in enumerate(c.gates):
        ops[k, 0] = _OPCODES[g.kind]
        ops[k, 1] = g.qubits[0]
        if g.kind is Kind.CNOT:
            ops[k, 2] = g.qubits[1]
            ops[k, 3] = g.polarity
        elif g.kind is Kind.RZ:
            angles[k] = g.angle
    return ops, angles


def apply_circuit(c: Circuit, states: np.ndarray, cap: int = DEFAULT_QUBIT_CAP, backend=None) -> np.ndarray:
    """Evolve one statevector (1-D) or a column batch (2-D). Returns a new array."""
    _check_cap(c.total_qubits, cap)
    states = np.asarray(states, dtype=np.complex128)
    block = np.ascontiguousarray(states.reshape(states.shape[0], -1)).copy()
    ops, angles = to_program(c)
    _kernels.run_program(block, ops, angles, c.total_qubits, backend)
    return block.reshape(states.shape)


def circuit_unitary(c: Circuit, cap: int = DEFAULT_QUBIT_CAP, backend=None) -> np.ndarray:
    _check_cap(c.total_qubits, cap)
    return apply_circuit(c, np.eye(1 << c.total_qubits, dtype=np.complex128), cap, backend)


def exact_evolution(h: Hamiltonian, t: float, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """``exp(-i t H)`` via ``eigh`` of the dense Hamiltonian."""
    evals, evecs = np.linalg.eigh(hamiltonian_matrix(h, cap))
    return (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T


def term_evolution(term: PauliString, t: float, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Closed form ``cos(t a) I - i sin(t a) P`` for a unit-square Pauli word."""
    unit = pauli_matrix(PauliString(1.0, term.word), cap)
    x = t * term.coefficient
    return np.cos(x) * np.eye(unit.shape[0]) - 1j * np.sin(x) * unit


def product_formula(h: Hamiltonian, schedule: list[Slot], cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Multiply closed-form term exponentials in schedule order (styles ignored)."""
    u = np.eye(1 << h.num_qubits, dtype=complex)
    cache = {}
    for slot in schedule:
        key = (slot.term, slot.time)
        if key not in cache:
            cache[key] = term_evolution(h.terms[slot.term], slot.time, cap)
        u = cache[key] @ u
    return u


def distance(a: np.ndarray, b: np.ndarray, phase_insensitive: bool = False) -> float:
    """Max-entry distance, optionally after removing a global phase."""
    if a.shape != b.shape:
        raise TrotterError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if phase_insensitive:
        idx = np.unravel_index(np.argmax(np.abs(a)), a.shape)
        if abs(b[idx]) > 0:
            b = b * np.exp(1j * (np.angle(a[idx]) - np.angle(b[idx])))
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def control_blocks(u: np.ndarray, control: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Split a unitary into its control-0 and control-1 diagonal blocks.

    Off-diagonal blocks are not returned; see :func:`offdiagonal_norm`.
    """
    n = int(np.log2(u.shape[0]))
    t = u.reshape((2,) * (2 * n))
    idx0 = [slice(None)] * (2 * n)
    idx1 = list(idx0)
    idx0[control] = idx0[n + control] = 0
    idx1[control] = idx1[n + control] = 1
    half = 1 << (n - 1)
    return t[tuple(idx0)].reshape(half, half), t[tuple(idx1)].reshape(half, half)


def offdiagonal_norm(u: np.ndarray, control: int = 0) -> float:
    """Largest entry coupling control 0 to control 1 (zero for any controlled op)."""
    n = int(np.log2(u.shape[0]))
    t = u.reshape((2,) * (2 * n))
    idx = [slice(None)] * (2 * n)
    idx[control], idx[n + control] = 0, 1
    a = np.max(np.abs(t[tuple(idx)]))
    idx[control], idx[n + control] = 1, 0
    return float(max(a, np.max(np.abs(t[tuple(idx)]))))


def fit_error_order(h: Hamiltonian, p: int, times, cap: int = DEFAULT_QUBIT_CAP) -> float:
    """Least-squares slope of log(Trotter error) against log(t), one step each."""
    times = np.asarray(list(times), dtype=float)
    if times.size < 3 or np.any(times <= 0):
        raise TrotterError("need at least three positive times")
    errors = np.array([
        distance(circuit_unitary(compile_step(h, t, p, Mode.PLAIN), cap), exact_evolution(h, t, cap))
        for t in times
    ])
    if np.all(errors < ERROR_FLOOR):
        raise TrotterError("error floor reached; order indeterminate")
    slope, _ = np.polyfit(np.log(times), np.log(np.maximum(errors, ERROR_FLOOR)), 1)
    return float(slope)


def expected_slope_window(p: int) -> tuple[float, float]:
    """Acceptable fitted slopes for a one-step order-``p`` formula."""
    if p <= 2:
        return p + 0.7, p + 1.3
    return p + 0.5, p + 1.5


def reference_step(h: Hamiltonian, t: float, p: int, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Operator-route ``U_p(t)`` for one step."""
    return product_formula(h, trotter_schedule(len(h), t, p), cap)
