"""Command-line front end: ``trotterc compile|count|verify``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
Reports go to stdout as a table; ``--report`` also writes ``key=value`` lines.
Wall time goes to stderr only, so stdout and report files are reproducible.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .circuit import count_gates, emit_text, lower_polarity
from .compiler import CompileSpec, Mode, compile
from .errors import MatrixTooLarge, TrotterError
from .pauli import DEFAULT_QUBIT_CAP, Hamiltonian, parse_hamiltonian
from . import verify as V

FIT_TIMES = (0.4, 0.2, 0.1, 0.05)
NUM_RANDOM_STATES = 20


@dataclass
class Check:
    name: str
    value: float | None
    passed: bool | None  # None: informational or skipped
    note: str = ""


@dataclass
class RunReport:
    command: str
    hamiltonian: str
    num_qubits: int
    num_terms: int
    mode: str
    order: int
    steps: int
    time: float
    merge: bool
    rotation_count: int | None = None
    cnot_count: int | None = None
    clifford_count: int | None = None
    x_count: int | None = None
    tolerance: float | None = None
    seed: int | None = None
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def _header(self):
        pairs = [
            ("command", self.command),
            ("hamiltonian", self.hamiltonian),
            ("num_qubits", self.num_qubits),
            ("num_terms", self.num_terms),
            ("mode", self.mode),
            ("order", self.order),
            ("steps", self.steps),
            ("time", repr(self.time)),
            ("merge", str(self.merge).lower()),
        ]
        for key in ("rotation_count", "cnot_count", "clifford_count", "x_count"):
            if getattr(self, key) is not None:
                pairs.append((key, getattr(self, key)))
        if self.tolerance is not None:
            pairs += [("tolerance", repr(self.tolerance)), ("seed", self.seed)]
        return pairs

    def to_keyvalue(self) -> str:
        lines = [f"{k}={v}" for k, v in self._header()]
        for c in self.checks:
            status = {True: "pass", False: "fail", None: "info" if not c.note else "skip"}[c.passed]
            value = "" if c.value is None else f"{c.value:.3e}"
            lines.append(f"check.{c.name}={status},{value}")
        if self.checks:
            lines.append(f"result={'pass' if self.ok else 'fail'}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        width = max(len(k) for k, _ in self._header())
        lines = [f"{k:<{width}}  {v}" for k, v in self._header()]
        if self.checks:
            lines.append("")
            name_w = max(len(c.name) for c in self.checks)
            for c in self.checks:
                status = {True: "PASS", False: "FAIL", None: "info" if not c.note else "skip"}[c.passed]
                value = "" if c.value is None else f"{c.value:.3e}"
                extra = f"  ({c.note})" if c.note else ""
                lines.append(f"  {status}  {c.name:<{name_w}}  {value}{extra}")
            lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def load_hamiltonian_arg(path: str) -> Hamiltonian:
    """Read ``path``; bare fixture names like ``heis3.ham`` fall back to the bundled copies."""
    if not os.path.exists(path):
        bundled = resources.files("trotterc") / "fixtures" / os.path.basename(path)
        if os.path.basename(path) == path and bundled.is_file():
            return parse_hamiltonian(bundled.read_text(encoding="utf-8"))
        raise TrotterError(f"cannot read Hamiltonian file {path!r}")
    with open(path, encoding="utf-8") as f:
        return parse_hamiltonian(f.read())


def _spec(args, mode=None) -> CompileSpec:
    return CompileSpec(
        order=args.order,
        time=args.time,
        steps=args.steps,
        mode=mode if mode is not None else args.mode,
        merge=args.merge,
    )


def _base_report(command, args, h, spec) -> RunReport:
    return RunReport(
        command=command,
        hamiltonian=os.path.basename(args.ham),
        num_qubits=h.num_qubits,
        num_terms=len(h),
        mode=spec.mode.value,
        order=spec.order,
        steps=spec.steps,
        time=float(spec.time),
        merge=spec.merge,
    )


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".trotterc-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def cmd_compile(args) -> int:
    h = load_hamiltonian_arg(args.ham)
    spec = _spec(args)
    circuit = lower_polarity(compile(h, spec))
    text = emit_text(circuit)
    counts = count_gates(circuit)
    report = _base_report("compile", args, h, spec)
    report.rotation_count = counts.rz_count
    report.cnot_count = counts.cnot_count
    report.clifford_count = counts.clifford_single_count
    report.x_count = counts.x_count
    _write_atomic(args.out, text)
    _finish(report, args)
    return 0


def count_table(h: Hamiltonian, order: int, steps: int = 1, merge: bool = False) -> list[tuple[str, object, object, object]]:
    """Rows ``(mode, rotations, cnots, open_cnots)``; rejected modes give ``n/a``."""
    rows = []
    for mode in Mode:
        try:
            c = compile(h, CompileSpec(order, 1.0, steps, mode, merge))
        except TrotterError:
            rows.append((mode.value, "n/a", "n/a", "n/a"))
            continue
        n = count_gates(c)
        rows.append((mode.value, n.rz_count, n.cnot_count, n.open_cnot_count))
    return rows


def cmd_count(args) -> int:
    h = load_hamiltonian_arg(args.ham)
    CompileSpec(args.order, 1.0, args.steps)  # validates order and steps
    rows = count_table(h, args.order, args.steps, args.merge)
    out = [f"hamiltonian {os.path.basename(args.ham)}  N={h.num_qubits}  L={len(h)}  "
           f"order={args.order}  steps={args.steps}  merge={str(args.merge).lower()}",
           f"{'mode':<22}{'rotations':>10}{'cnots':>8}{'open_cnots':>12}"]
    out += [f"{m:<22}{r:>10}{c:>8}{o:>12}" for m, r, c, o in rows]
    text = "\n".join(out) + "\n"
    sys.stdout.write(text)
    if args.report:
        kv = [f"{m}.{k}={v}" for m, r, c, o in rows for k, v in (("rotations", r), ("cnots", c), ("open_cnots", o))]
        _write_atomic(args.report, "\n".join(kv) + "\n")
    return 0


def _expected_controlled(off_block, on_block):
    d = off_block.shape[0]
    out = np.zeros((2 * d, 2 * d), dtype=complex)
    out[:d, :d] = off_block
    out[d:, d:] = on_block
    return out


def run_checks(h: Hamiltonian, order: int, t: float, steps: int, merge: bool,
               tolerance: float, seed: int, fit_order: bool = False,
               cap: int = DEFAULT_QUBIT_CAP) -> list[Check]:
    """The verification suite behind ``trotterc verify``."""
    if h.num_qubits + 1 > cap:
        raise MatrixTooLarge(
            f"too many qubits for dense evaluation: {h.num_qubits + 1} > cap {cap}; try a smaller fixture"
        )
    dim = 1 << h.num_qubits
    eye = np.eye(dim)

    def unitary(mode):
        return V.circuit_unitary(compile(h, CompileSpec(order, t, steps, mode, merge)), cap)

    def ref(time):
        step = V.reference_step(h, time / steps, order, cap)
        return np.linalg.matrix_power(step, steps)

    def check(name, value, note=""):
        return Check(name, value, value < tolerance, note)

    checks = []
    forward = ref(t)
    plain = unitary(Mode.PLAIN)
    checks.append(check("plain_vs_product_formula", V.distance(plain, forward)))
    naive = unitary(Mode.CONTROLLED_NAIVE)
    checks.append(check("naive_vs_controlled_target", V.distance(naive, _expected_controlled(eye, forward))))

    if order >= 2:
        opt = unitary(Mode.CONTROLLED_OPTIMIZED)
        checks.append(check("optimized_vs_naive", V.distance(opt, naive)))
        checks.append(check("optimized_vs_controlled_target", V.distance(opt, _expected_controlled(eye, forward))))
        directional = unitary(Mode.DIRECTIONAL)
        target = _expected_controlled(ref(-t), forward)
        checks.append(check("directional_vs_branch_target", V.distance(directional, target)))

        rng = np.random.default_rng(seed)
        psi = rng.normal(size=(dim, NUM_RANDOM_STATES)) + 1j * rng.normal(size=(dim, NUM_RANDOM_STATES))
        psi /= np.linalg.norm(psi, axis=0)
        states = np.vstack([psi, np.zeros_like(psi)])  # control qubit 0 is the top bit
        out = V.apply_circuit(compile(h, CompileSpec(order, t, steps, Mode.CONTROLLED_OPTIMIZED, merge)), states, cap)
        checks.append(check("control0_states_unchanged", float(np.max(np.abs(out - states)))))
    else:
        checks.append(Check("directional_modes", None, None, "order 1 is not symmetric"))

    checks.append(Check("plain_vs_exact_evolution", V.distance(plain, V.exact_evolution(h, t, cap)), None))

    if fit_order:
        lo, hi = V.expected_slope_window(order)
        try:
            slope = V.fit_error_order(h, order, FIT_TIMES, cap)
            checks.append(Check("error_order_slope", slope, lo <= slope <= hi, f"window [{lo}, {hi}]"))
        except TrotterError as exc:
            checks.append(Check("error_order_slope", None, None, str(exc)))
    return checks


def cmd_verify(args) -> int:
    h = load_hamiltonian_arg(args.ham)
    spec = _spec(args)
    report = _base_report("verify", args, h, spec)
    report.tolerance = args.tolerance
    report.seed = args.seed
    report.checks = run_checks(h, spec.order, spec.time, spec.steps, spec.merge,
                               args.tolerance, args.seed, args.fit_order)
    _finish(report, args)
    return 0 if report.ok else 1


def _finish(report: RunReport, args):
    report.wall_time = time.perf_counter() - args.started
    sys.stdout.write(report.to_table())
    if getattr(args, "report", None):
        _write_atomic(args.report, report.to_keyvalue())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trotterc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_time=True):
        p.add_argument("--ham", required=True, help="Hamiltonian file (.ham)")
        p.add_argument("--order", type=int, required=True, help="Trotter order: 1 or even")
        if need_time:
            p.add_argument("--time", type=float, required=True, help="total evolution time")
        p.add_argument("--steps", type=int, default=1, help="Trotter steps (default 1)")
        p.add_argument("--merge", action="store_true", help="merge adjacent rotations within each step")
        p.add_argument("--report", help="also write a key=value report here")

    modes = [m.value for m in Mode]

    p = sub.add_parser("compile", help="compile to circuit text")
    common(p)
    p.add_argument("--mode", choices=modes, default="plain")
    p.add_argument("--out", required=True, help="circuit output path")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("count", help="rotation and CNOT counts for every mode")
    common(p, need_time=False)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="dense equivalence checks")
    common(p)
    p.add_argument("--mode", choices=modes, default="controlled-optimized",
                   help="recorded in the report; the suite always checks every mode")
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fit-order", action="store_true", help="also fit the Trotter error order")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.started = time.perf_counter()
    try:
        code = args.func(args)
    except (TrotterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wall_time {time.perf_counter() - args.started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
