"""Time dense circuit evaluation on the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--max-qubits 8]

Each row compiles a controlled-naive order-4 step of a Heisenberg chain and
builds its full unitary. Numba is warmed up first so compile time is excluded.
"""

import argparse
import time

import numpy as np

from trotterc import _kernels
from trotterc.compiler import Mode, compile_step
from trotterc.pauli import Hamiltonian, PauliString
from trotterc.verify import circuit_unitary


def heisenberg(n):
    terms = []
    for i in range(n - 1):
        for letter in "XYZ":
            word = ["I"] * n
            word[i] = word[i + 1] = letter
            terms.append(PauliString(1.0, "".join(word)))
    return Hamiltonian(n, tuple(terms))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--max-qubits", type=int, default=8)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.numba is not None else [])
    warm = compile_step(heisenberg(2), 0.1, 2, Mode.CONTROLLED_NAIVE)
    for b in backends:
        circuit_unitary(warm, backend=b)

    print(f"{'qubits':>6} {'gates':>7} " + " ".join(f"{b + ' (s)':>12}" for b in backends) + f" {'speedup':>8}")
    for total in range(3, args.max_qubits + 1):
        c = compile_step(heisenberg(total - 1), 0.3, 4, Mode.CONTROLLED_NAIVE)
        results = {b: best_of(lambda: circuit_unitary(c, backend=b), args.repeat) for b in backends}
        if len(backends) == 2:
            a = circuit_unitary(c, backend="numpy")
            b = circuit_unitary(c, backend="numba")
            assert np.max(np.abs(a - b)) < 1e-12
        speedup = results["numpy"] / results["numba"] if "numba" in results else float("nan")
        cells = " ".join(f"{results[b]:>12.4f}" for b in backends)
        print(f"{total:>6} {len(c):>7} {cells} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
