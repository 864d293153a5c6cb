"""Dense gate-application kernels.

A circuit is lowered to a flat program (``ops`` int array, ``angles`` float
array) and applied in place to a complex block of shape ``(2**n, k)``: the
columns are independent statevectors, so the same kernel builds full
unitaries (start from the identity) and simulates batches of states.

Two interchangeable backends:

* ``numba``: one ``@njit`` loop over the whole program.
* ``numpy``: a Python loop over gates with vectorized reshapes.

Numba is used when importable unless ``TROTTERC_DISABLE_NUMBA`` is set to a
non-empty value other than ``0``. Both backends are always importable for
comparison via :func:`run_program` with an explicit ``backend``.
"""

from __future__ import annotations

import math
import os

import numpy as np

OP_H, OP_S, OP_SDG, OP_X, OP_CNOT, OP_RZ = range(6)

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

try:
    import numba
except ImportError:  # pragma: no cover - numba is normally installed
    numba = None

_disabled = os.environ.get("TROTTERC_DISABLE_NUMBA", "").strip() not in ("", "0")
BACKEND = "numba" if numba is not None and not _disabled else "numpy"


def _run_numpy(block, ops, angles, n):
    cols = block.shape[1]
    for k in range(ops.shape[0]):
        op, a, b, pol = ops[k]
        if op == OP_CNOT:
            v = block.reshape((2,) * n + (cols,))
            sel0 = [slice(None)] * n
            sel0[a] = pol
            sel1 = list(sel0)
            sel0[b] = 0
            sel1[b] = 1
            sel0, sel1 = tuple(sel0), tuple(sel1)
            tmp = v[sel0].copy()
            v[sel0] = v[sel1]
            v[sel1] = tmp
            continue
        v = block.reshape(1 << a, 2, -1)
        if op == OP_RZ:
            half = 0.5 * angles[k]
            v[:, 0, :] *= complex(math.cos(half), -math.sin(half))
            v[:, 1, :] *= complex(math.cos(half), math.sin(half))
        elif op == OP_S:
            v[:, 1, :] *= 1j
        elif op == OP_SDG:
            v[:, 1, :] *= -1j
        elif op == OP_X:
            v[:, [0, 1], :] = v[:, [1, 0], :]
        elif op == OP_H:
            top = v[:, 0, :].copy()
            v[:, 0, :] += v[:, 1, :]
            v[:, 0, :] *= _INV_SQRT2
            v[:, 1, :] = (top - v[:, 1, :]) * _INV_SQRT2
        else:
            raise ValueError(f"unknown opcode {op}")


def _run_loops(block, ops, angles, n):
    # Scalar loops; compiled by numba when available.
    dim, cols = block.shape
    s = 0.7071067811865476
    for k in range(ops.shape[0]):
        op = ops[k, 0]
        a = ops[k, 1]
        if op == OP_CNOT:
            cbit = 1 << (n - 1 - a)
            tbit = 1 << (n - 1 - ops[k, 2])
            want = cbit if ops[k, 3] == 1 else 0
            for i in range(dim):
                if (i & tbit) == 0 and (i & cbit) == want:
                    j = i | tbit
                    for m in range(cols):
                        tmp = block[i, m]
                        block[i, m] = block[j, m]
                        block[j, m] = tmp
            continue
        bit = 1 << (n - 1 - a)
        if op == OP_RZ:
            half = 0.5 * angles[k]
            p0 = complex(math.cos(half), -math.sin(half))
            p1 = complex(math.cos(half), math.sin(half))
            for i in range(dim):
                f = p1 if i & bit else p0
                for m in range(cols):
                    block[i, m] *= f
        elif op == OP_S or op == OP_SDG:
            f = 1j if op == OP_S else -1j
            for i in range(dim):
                if i & bit:
                    for m in range(cols):
                        block[i, m] *= f
        else:
            for i in range(dim):
                if i & bit:
                    continue
                j = i | bit
                for m in range(cols):
                    x0 = block[i, m]
                    x1 = block[j, m]
                    if op == OP_X:
                        block[i, m] = x1
                        block[j, m] = x0
                    else:
                        block[i, m] = (x0 + x1) * s
                        block[j, m] = (x0 - x1) * s


if numba is not None:
    _run_numba = numba.njit(cache=True)(_run_loops)
else:  # pragma: no cover
    _run_numba = None


def run_program(block: np.ndarray, ops: np.ndarray, angles: np.ndarray, n: int, backend: str | None = None):
    """Apply ``ops`` to ``block`` in place; returns ``block``.

    ``block`` must be C-contiguous complex128 of shape ``(2**n, k)``.
    """
    backend = backend or BACKEND
    if block.dtype != np.complex128 or not block.flags.c_contiguous:
        raise TypeError("block must be C-contiguous complex128")
    if block.shape[0] != 1 << n:
        raise ValueError(f"block has {block.shape[0]} rows, expected {1 << n}")
    if backend == "numba":
        if _run_numba is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        _run_numba(block, ops, angles, n)
    elif backend == "numpy":
        _run_numpy(block, ops, angles, n)
    elif backend == "python":
        _run_loops(block, ops, angles, n)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return block
