import os
import subprocess
import sys

import numpy as np
import pytest

from trotterc import _kernels
from trotterc.compiler import Mode, compile_step
from trotterc.pauli import load_fixture
from trotterc.verify import circuit_unitary, to_program

BACKENDS = ["numpy", "python"] + (["numba"] if _kernels.numba is not None else [])


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("mode", list(Mode))
def test_backends_agree(backend, mode):
    c = compile_step(load_fixture("heis3"), 0.61, 4, mode)
    ref = circuit_unitary(c, backend="numpy")
    assert np.max(np.abs(circuit_unitary(c, backend=backend) - ref)) < 1e-13


def test_unknown_opcode_rejected_by_numpy_path():
    block = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        _kernels.run_program(block, np.array([[9, 0, 0, 0]]), np.zeros(1), 1, "numpy")


def test_block_validation():
    ops, angles = to_program(compile_step(load_fixture("ising2"), 0.1, 1, Mode.PLAIN))
    with pytest.raises(TypeError):
        _kernels.run_program(np.eye(4), ops, angles, 2)
    with pytest.raises(ValueError):
        _kernels.run_program(np.eye(8, dtype=complex), ops, angles, 2)


def test_env_flag_selects_numpy():
    env = dict(os.environ, TROTTERC_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from trotterc import _kernels; print(_kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
