"""Trotter circuit compiler with rotation-frugal controlled evolution."""

from .circuit import (
    CNOT,
    RZ,
    SDG,
    Circuit,
    Gate,
    GateCounts,
    H,
    Kind,
    S,
    X,
    count_gates,
    emit_text,
    lower_polarity,
    merge_adjacent_rotations,
    parse_text,
)
from .compiler import (
    CompileSpec,
    Mode,
    compile,
    compile_first_order,
    compile_higher_order,
    compile_reversed_first_order,
    compile_second_order,
    suzuki_alpha,
)
from .errors import TrotterError
from .gadgets import GadgetRequest, build_controlled_gadget, build_directional_gadget, build_plain_gadget
from .pauli import (
    Hamiltonian,
    PauliString,
    format_hamiltonian,
    hamiltonian_matrix,
    load_fixture,
    parse_hamiltonian,
    pauli_matrix,
)
from .verify import circuit_unitary, distance, exact_evolution, fit_error_order

__version__ = "0.1.0"
