"""Pauli strings, Hamiltonians, and the ``.ham`` text format.

A Hamiltonian is an *ordered* list of weighted Pauli words. The order matters:
term ``l`` of the list is the ``l``-th exponential of a first-order Trotter
step, so the parser preserves line order exactly.

File format, one term per line::

    # comment
    1.0   XXI
    -2.5e-1 IZZ

Qubit 0 is the leftmost letter of a word and the most significant factor of
every Kronecker product built here.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from importlib import resources

import numpy as np

from .errors import MatrixTooLarge, ParseError

PAULI_LETTERS = "IXYZ"

# Dense matrices beyond this many qubits are refused (256 x 256 at the default).
DEFAULT_QUBIT_CAP = 8

_COEFF_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """One Hamiltonian term: a real weight times a Pauli word."""

    coefficient: float
    word: str

    def __post_init__(self):
        if not self.word:
            raise ParseError("Pauli word must act on at least one qubit")
        bad = set(self.word) - set(PAULI_LETTERS)
        if bad:
            raise ParseError(f"invalid Pauli letter {sorted(bad)[0]!r}")
        if not math.isfinite(self.coefficient):
            raise ParseError("coefficient must be finite")
        object.__setattr__(self, "coefficient", float(self.coefficient))

    @property
    def num_qubits(self) -> int:
        return len(self.word)

    @property
    def support(self) -> tuple[int, ...]:
        """Indices of the non-identity letters, ascending."""
        return tuple(i for i, c in enumerate(self.word) if c != "I")

    @property
    def is_identity(self) -> bool:
        return not self.support


@dataclass(frozen=True)
class Hamiltonian:
    num_qubits: int
    terms: tuple[PauliString, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.num_qubits < 1:
            raise ParseError("Hamiltonian needs at least one qubit")
        if not self.terms:
            raise ParseError("no terms")
        for k, term in enumerate(self.terms):
            if term.num_qubits != self.num_qubits:
                raise ParseError(f"qubit count mismatch at term {k}")

    @classmethod
    def from_terms(cls, terms) -> "Hamiltonian":
        """Build from ``(coefficient, word)`` pairs or PauliStrings."""
        terms = [t if isinstance(t, PauliString) else PauliString(*t) for t in terms]
        if not terms:
            raise ParseError("no terms")
        return cls(terms[0].num_qubits, tuple(terms))

    def __len__(self) -> int:
        return len(self.terms)


def parse_hamiltonian(text: str) -> Hamiltonian:
    """Parse the ``.ham`` format. Term order follows line order."""
    terms: list[PauliString] = []
    num_qubits = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected '<coefficient> <word>' at line {lineno}")
        coeff_text, word = fields
        if not _COEFF_RE.match(coeff_text):
            raise ParseError(f"invalid coefficient at line {lineno}")
        coefficient = float(coeff_text)
        if not math.isfinite(coefficient):
            raise ParseError(f"invalid coefficient at line {lineno}")
        if any(c not in PAULI_LETTERS for c in word):
            raise ParseError(f"invalid Pauli letter at line {lineno}")
        if num_qubits is None:
            num_qubits = len(word)
        elif len(word) != num_qubits:
            raise ParseError(f"qubit count mismatch at line {lineno}")
        terms.append(PauliString(coefficient, word))
    if not terms:
        raise ParseError("no terms")
    return Hamiltonian(num_qubits, tuple(terms))


def format_hamiltonian(h: Hamiltonian) -> str:
    """Inverse of :func:`parse_hamiltonian` (exact: floats use ``repr``)."""
    return "".join(f"{t.coefficient!r} {t.word}\n" for t in h.terms)


def read_hamiltonian(path) -> Hamiltonian:
    with open(path, encoding="utf-8") as f:
        return parse_hamiltonian(f.read())


def fixture_names() -> list[str]:
    root = resources.files("trotterc") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".ham"))


def load_fixture(name: str) -> Hamiltonian:
    """Load one of the bundled chains, e.g. ``"heis3"`` or ``"ising2.ham"``."""
    if not name.endswith(".ham"):
        name += ".ham"
    path = resources.files("trotterc") / "fixtures" / name
    return parse_hamiltonian(path.read_text(encoding="utf-8"))


def _check_cap(num_qubits: int, cap: int):
    if num_qubits > cap:
        raise MatrixTooLarge(f"matrix too large: {num_qubits} qubits exceeds cap of {cap}")


def pauli_matrix(term: PauliString, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Dense ``coefficient * P`` with qubit 0 as the most significant factor."""
    _check_cap(term.num_qubits, cap)
    mat = reduce(np.kron, (_SINGLE[c] for c in term.word))
    return term.coefficient * mat


def hamiltonian_matrix(h: Hamiltonian, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    _check_cap(h.num_qubits, cap)
    return sum(pauli_matrix(t, cap) for t in h.terms)
