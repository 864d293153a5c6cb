import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trotterc.circuit import (
    CNOT,
    RZ,
    SDG,
    Circuit,
    GateCounts,
    H,
    S,
    X,
    count_gates,
    emit_text,
    lower_polarity,
    merge_adjacent_rotations,
    parse_text,
)
from trotterc.compiler import Mode, compile_first_order, compile_second_order, compile_step
from trotterc.errors import CircuitError
from trotterc.gadgets import GadgetRequest, build_directional_gadget
from trotterc.pauli import PauliString, load_fixture
from trotterc.verify import circuit_unitary, distance

from conftest import ALL_FIXTURES


def test_gate_validation():
    with pytest.raises(CircuitError):
        CNOT(1, 1)
    with pytest.raises(CircuitError):
        RZ(math.inf, 0)
    with pytest.raises(CircuitError):
        CNOT(0, 1, polarity=2)
    with pytest.raises(CircuitError):
        Circuit(2, (H(2),))
    with pytest.raises(CircuitError):
        Circuit(2, (), control_qubit=5)


def test_count_empty():
    assert count_gates(Circuit(3)) == GateCounts()


def test_count_direct_tally():
    c = Circuit(2, (H(0), CNOT(0, 1), RZ(0.5, 1), CNOT(0, 1), H(0)))
    n = count_gates(c)
    assert (n.rz_count, n.cnot_count, n.clifford_single_count, n.x_count) == (1, 2, 2, 0)


def test_zero_angle_rotation_still_counted():
    assert count_gates(Circuit(1, (RZ(0.0, 0),))).rz_count == 1


def test_first_order_count(heis3):
    assert count_gates(compile_first_order(heis3, 0.3)).rz_count == 6


# -- merge --------------------------------------------------------------------


def test_merge_fuses_same_wire():
    c = Circuit(3, (RZ(0.25, 2), RZ(0.5, 2)))
    assert merge_adjacent_rotations(c).gates == (RZ(0.75, 2),)


def test_merge_blocked_by_intervening_gate():
    c = Circuit(3, (RZ(0.25, 2), CNOT(1, 2), RZ(0.5, 2)))
    assert merge_adjacent_rotations(c) == c


def test_merge_ignores_gates_on_other_wires():
    c = Circuit(3, (RZ(0.25, 2), H(0), CNOT(0, 1), RZ(0.5, 2)))
    assert merge_adjacent_rotations(c).gates == (RZ(0.75, 2), H(0), CNOT(0, 1))


def test_merge_zero_rotation_unwinds_conjugation():
    gates = (H(0), CNOT(0, 1), RZ(0.3, 1), RZ(-0.3, 1), CNOT(0, 1), H(0))
    assert merge_adjacent_rotations(Circuit(2, gates)).gates == ()


def test_merge_respects_polarity():
    c = Circuit(2, (CNOT(0, 1, polarity=0), CNOT(0, 1)))
    assert merge_adjacent_rotations(c) == c
    c = Circuit(2, (CNOT(0, 1, polarity=0), CNOT(0, 1, polarity=0)))
    assert merge_adjacent_rotations(c).gates == ()


def test_merge_s_sdg_and_cnot_direction():
    assert merge_adjacent_rotations(Circuit(1, (S(0), SDG(0)))).gates == ()
    assert merge_adjacent_rotations(Circuit(1, (S(0), S(0)))).gates == (S(0), S(0))
    c = Circuit(2, (CNOT(0, 1), CNOT(1, 0)))
    assert merge_adjacent_rotations(c) == c


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_second_order_merge_count(name):
    h = load_fixture(name)
    c = compile_second_order(h, 0.41)
    merged = merge_adjacent_rotations(c)
    assert count_gates(c).rz_count == 2 * len(h)
    assert count_gates(merged).rz_count == 2 * len(h) - 1
    assert distance(circuit_unitary(merged), circuit_unitary(c)) < 1e-13


@pytest.mark.parametrize("name", ALL_FIXTURES)
@pytest.mark.parametrize("mode", list(Mode))
@pytest.mark.parametrize("p", [2, 4])
def test_passes_preserve_unitary_on_fixtures(name, mode, p):
    c = compile_step(load_fixture(name), 0.37, p, mode)
    u = circuit_unitary(c)
    assert distance(circuit_unitary(merge_adjacent_rotations(c)), u) < 1e-13
    assert distance(circuit_unitary(lower_polarity(c)), u) < 1e-13


# -- lowering -----------------------------------------------------------------


def test_lower_identity_without_open_controls():
    c = Circuit(2, (H(0), CNOT(0, 1), RZ(0.1, 1)))
    assert lower_polarity(c) == c


def test_lower_open_cnot():
    c = Circuit(4, (CNOT(0, 3, polarity=0),))
    assert lower_polarity(c).gates == (X(0), CNOT(0, 3), X(0))


def test_lower_directional_gadget_keeps_unitary():
    req = GadgetRequest(PauliString(1.0, "ZZ"), 0.3, system_offset=1, control_qubit=0)
    c = Circuit(3, build_directional_gadget(req), control_qubit=0)
    lowered = lower_polarity(c)
    assert count_gates(lowered).open_cnot_count == 0
    assert distance(circuit_unitary(lowered), circuit_unitary(c)) < 1e-14


# -- text ---------------------------------------------------------------------


def test_emit_empty():
    assert emit_text(Circuit(1)) == "qubits 1\n"


def test_emit_direct_mapping():
    assert emit_text(Circuit(1, (H(0), RZ(0.5, 0)))) == "qubits 1\nh q[0]\nrz(0.5) q[0]\n"


def test_emit_all_gate_kinds():
    c = Circuit(3, (H(1), S(0), SDG(2), X(0), CNOT(2, 0), RZ(-1e-20, 1)), control_qubit=0)
    assert emit_text(c) == (
        "qubits 3\ncontrol q[0]\nh q[1]\ns q[0]\nsdg q[2]\nx q[0]\ncx q[2],q[0]\nrz(-1e-20) q[1]\n"
    )


def test_emit_rejects_open_controls():
    with pytest.raises(CircuitError, match="lower polarity before export"):
        emit_text(Circuit(2, (CNOT(0, 1, polarity=0),)))


def test_emit_shortest_round_trip_angles():
    angle = 0.1 + 0.2
    text = emit_text(Circuit(1, (RZ(angle, 0),)))
    assert text == "qubits 1\nrz(0.30000000000000004) q[0]\n"
    assert parse_text(text).gates[0].angle == angle


gate_strategy = st.one_of(
    st.builds(H, st.integers(0, 2)),
    st.builds(S, st.integers(0, 2)),
    st.builds(SDG, st.integers(0, 2)),
    st.builds(X, st.integers(0, 2)),
    st.builds(RZ, st.floats(-4, 4, allow_nan=False), st.integers(0, 2)),
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))
    .filter(lambda t: t[0] != t[1])
    .map(lambda t: CNOT(*t)),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(gate_strategy, max_size=30))
def test_random_circuits_passes_preserve_unitary(gates):
    c = Circuit(3, tuple(gates))
    u = circuit_unitary(c)
    merged = merge_adjacent_rotations(c)
    assert len(merged) <= len(c)
    assert distance(circuit_unitary(merged), u) < 1e-13
    assert distance(circuit_unitary(lower_polarity(c)), u) < 1e-13


@settings(max_examples=200, deadline=None)
@given(st.lists(gate_strategy, max_size=20), st.lists(gate_strategy, max_size=20))
def test_emit_injective_and_round_trips(a, b):
    ca, cb = lower_polarity(Circuit(3, tuple(a))), lower_polarity(Circuit(3, tuple(b)))
    ta, tb = emit_text(ca), emit_text(cb)
    assert parse_text(ta) == ca
    assert (ta == tb) == (ca.gates == cb.gates)


def test_emit_deterministic_across_calls(heis3):
    c = lower_polarity(compile_step(heis3, 0.5, 4, Mode.CONTROLLED_OPTIMIZED))
    assert emit_text(c) == emit_text(lower_polarity(compile_step(heis3, 0.5, 4, Mode.CONTROLLED_OPTIMIZED)))


def test_merge_fuses_fields_on_disjoint_wires():
    # All single-qubit terms back to back: after the middle pair fuses, each
    # wire sees only its own two rotations, so every field pair fuses.
    from trotterc.pauli import parse_hamiltonian

    h = parse_hamiltonian("1.0 ZZI\n0.8 XII\n0.8 IXI\n0.8 IIX")
    c = compile_second_order(h, 0.3)
    merged = merge_adjacent_rotations(c)
    assert count_gates(merged).rz_count == 2 * len(h) - 3
    assert distance(circuit_unitary(merged), circuit_unitary(c)) < 1e-13
