import numpy as np
import pytest

from trotterc.pauli import fixture_names, load_fixture

ALL_FIXTURES = [name[:-4] for name in fixture_names()]
SMALL_FIXTURES = [n for n in ALL_FIXTURES if load_fixture(n).num_qubits <= 3]


@pytest.fixture
def heis3():
    return load_fixture("heis3")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def kron_all(*mats):
    out = np.eye(1)
    for m in mats:
        out = np.kron(out, m)
    return out


def controlled(off, on):
    d = off.shape[0]
    out = np.zeros((2 * d, 2 * d), dtype=complex)
    out[:d, :d] = off
    out[d:, d:] = on
    return out
