"""Command-line front end: bound sweeps, protocol verification, POVM checks,
asymptotic ratios, and the three-qubit demo.

Outputs are deterministic given identical flags and seeds: CSV per RFC 4180
(CRLF line endings, header row, 12 significant digits) with the seed echoed
as a leading `#seed=` comment, or JSON carrying the same numbers.  Exit code
is 0 exactly when every internal invariant check passes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import bounds as _bounds
from . import protocol as _protocol
from .bounds import (
    RoundSchedule,
    absolute_lower,
    asymptotic_absolute_lower,
    asymptotic_single_round,
    avg_entanglement_lower,
    bounds_row,
    failure_probability,
    mac_lower,
    single_round_lower,
    single_round_upper,
)
from .states import MacParams, PureState, binary_entropy, pauli_invariant_povm

INV_SQRT2 = 1.0 / math.sqrt(2.0)

SWEEP_COLUMNS = (
    "a",
    "b",
    "ent_states",
    "avg_ent",
    "lower_absolute",
    "lower_single",
    "upper_single",
    "upper_multiround",
    "teleport_upper",
)

MAC_COLUMNS = ("a", "c", "avg_ent", "mac_lower")


@dataclass
class SweepConfig:
    a_min: float
    a_max: float
    steps: int
    rounds: int
    out: str
    format: str

    def __post_init__(self):
        if not (INV_SQRT2 - 1e-12 <= self.a_min < self.a_max <= 1.0 + 1e-12):
            raise ValueError(
                f"require 1/sqrt(2) <= a_min < a_max <= 1, got [{self.a_min}, {self.a_max}]"
            )
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


@dataclass
class MacSweepConfig:
    density: int
    out: str
    format: str

    def __post_init__(self):
        if self.density < 2:
            raise ValueError("density must be at least 2")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _write_table(path, columns, rows, seed) -> None:
    lines = [f"#seed={seed}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    data = "\r\n".join(lines) + "\r\n"
    if path == "-":
        sys.stdout.write(data)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(data)


def _write_json(path, columns, rows, seed) -> None:
    # numbers pass through the same 12-significant-digit formatting as CSV,
    # so both formats carry identical values
    payload = {
        "seed": seed,
        "rows": [
            {col: float(_fmt(v)) if isinstance(v, float) else v for col, v in zip(columns, row)}
            for row in rows
        ],
    }
    text = json.dumps(payload, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit(cfg_format, path, columns, rows, seed) -> None:
    if cfg_format == "json":
        _write_json(path, columns, rows, seed)
    else:
        _write_table(path, columns, rows, seed)


def cmd_sweep(cfg: SweepConfig, seed: int = 42) -> int:
    grid = np.linspace(cfg.a_min, cfg.a_max, cfg.steps)
    # prime the shared multi-round value tables before fanning out
    _bounds.multiround_upper_opt(float(grid[0]), cfg.rounds)
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda a: bounds_row(float(a), cfg.rounds), grid))
    violations = []
    rows = []
    for r in results:
        violations.extend(f"a={r.a}: {v}" for v in r.check_ordering())
        rows.append(
            (
                r.a,
                r.b,
                binary_entropy(r.a**2),
                r.avg_ent,
                r.lower_absolute,
                r.lower_single,
                r.upper_single,
                r.upper_multiround,
                r.teleport_upper,
            )
        )
    try:
        _emit(cfg.format, cfg.out, SWEEP_COLUMNS, rows, seed)
    except OSError as exc:
        print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
        return 1
    if violations:
        for v in violations:
            print(f"invariant violation: {v}", file=sys.stderr)
        return 1
    return 0


def cmd_mac_sweep(cfg: MacSweepConfig, seed: int = 42) -> int:
    grid = np.linspace(INV_SQRT2, 1.0, cfg.density)
    rows = []
    for a in grid:
        for c in grid:
            p = MacParams.from_ac(float(a), float(c))
            avg = (binary_entropy(p.a**2) + binary_entropy(p.c**2)) / 2.0
            rows.append((p.a, p.c, avg, mac_lower(p)))
    try:
        _emit(cfg.format, cfg.out, MAC_COLUMNS, rows, seed)
    except OSError as exc:
        print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(a: float, xs, trials: int, seed: int) -> int:
    schedule = RoundSchedule(tuple(xs))
    try:
        _protocol.induced_povm(a, schedule)
    except RuntimeError as exc:
        print(f"induced POVM mismatch: {exc}", file=sys.stderr)
        return 1
    exact_cost = _protocol.expected_cost(a, schedule)
    recursion = _bounds.multiround_upper(a, schedule)
    print(f"induced POVM matches the target measurement (tol {_protocol.POVM_TOL})")
    print(f"exact expected cost {exact_cost:.12g} vs recursion {recursion:.12g}")
    if abs(exact_cost - recursion) > 1e-9:
        print("cost recursion mismatch", file=sys.stderr)
        return 1

    counts: dict = {}
    teleports = 0
    for i in range(trials):
        trace, _ = _protocol.run_protocol(a, schedule, seed=seed + i)
        counts[trace.outcome_label] = counts.get(trace.outcome_label, 0) + 1
        teleports += trace.teleported
    print("outcome  empirical  exact")
    for label, exact_p in zip(
        ("phi+", "phi-", "psi+", "psi-"), (0.25, 0.25, 0.25, 0.25)
    ):
        emp = counts.get(label, 0) / trials
        print(f"{label:7s}  {emp:.6f}   {exact_p:.6f}")
    p_fail = failure_probability(a, schedule.xs[0])
    expect_tel = p_fail if schedule.rounds == 1 else None
    emp_tel = teleports / trials
    print(f"teleport frequency {emp_tel:.6f}")
    if expect_tel is not None:
        sigma = math.sqrt(expect_tel * (1.0 - expect_tel) / trials)
        print(f"expected {expect_tel:.6f} (3 sigma = {3 * sigma:.6f})")
        if abs(emp_tel - expect_tel) > 3.0 * sigma + 1e-12:
            print("teleport frequency outside 3 sigma", file=sys.stderr)
            return 1
    for label in counts:
        emp = counts[label] / trials
        sigma = math.sqrt(0.25 * 0.75 / trials)
        if abs(emp - 0.25) > 3.0 * sigma + 1e-12:
            print(f"outcome {label} frequency outside 3 sigma", file=sys.stderr)
            return 1
    return 0


def cmd_povm(d: int, seed: int) -> int:
    rng = np.random.default_rng(seed)
    vec = rng.normal(size=d * d) + 1j * rng.normal(size=d * d)
    phi = PureState.from_vector(vec, (d, d))
    ensemble = [(1.0, phi)]
    constructed = pauli_invariant_povm(d, ensemble)
    print(f"completeness residual {constructed.completeness_residual():.3e}")
    try:
        _protocol.pauli_induced_povm(d, ensemble)
    except RuntimeError as exc:
        print(f"induced POVM mismatch: {exc}", file=sys.stderr)
        return 1
    cost = _protocol.pauli_protocol_cost(d, ensemble)
    avg = avg_entanglement_lower(constructed)
    print(f"protocol cost {cost:.12g}")
    print(f"average entanglement {avg:.12g}")
    print(f"cost-equality residual {abs(cost - avg):.3e}")
    if abs(cost - avg) > 1e-10:
        print("cost does not match average entanglement", file=sys.stderr)
        return 1
    return 0


def cmd_asymptotics(b_values) -> int:
    print("b  upper_single/approx  lower_single/approx  lower_absolute/linear")
    ok = True
    for b in b_values:
        a = math.sqrt(max(0.0, 1.0 - b * b))
        approx = asymptotic_single_round(b)
        linear = asymptotic_absolute_lower(b)
        r_up = single_round_upper(a) / approx
        r_lo = single_round_lower(a) / approx
        r_abs = absolute_lower(a) / linear
        print(f"{b:g}  {r_up:.6f}  {r_lo:.6f}  {r_abs:.6f}")
        if not all(math.isfinite(r) for r in (r_up, r_lo, r_abs)):
            ok = False
    return 0 if ok else 1


def cmd_demo() -> int:
    value = _protocol.demo_three_qubit()
    print(f"average_cost={_fmt(value)}")
    return 0 if value == 0.5 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entcost",
        description="Bounds and exact protocol simulation for the entanglement "
        "cost of nonlocal bipartite measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep every bound over the parameter a")
    p.add_argument("--a-min", type=float, default=INV_SQRT2)
    p.add_argument("--a-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--rounds", type=int, default=2)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("mac-sweep", help="sweep the production lower bound over (a, c)")
    p.add_argument("--steps", type=int, default=21, help="grid density per axis")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("verify", help="exact and Monte Carlo protocol verification")
    p.add_argument("--a", type=float, default=math.sqrt(0.8))
    p.add_argument("--x", type=float, action="append", default=None,
                   help="resource parameter per round (repeatable)")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("povm", help="Pauli-invariant POVM protocol verification")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("asymptotics", help="small-b bound/approximation ratios")
    p.add_argument("--b", type=float, action="append", default=None,
                   help="small parameter b (repeatable)")

    sub.add_parser("demo", help="three-qubit measurement demo")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        cfg = SweepConfig(args.a_min, args.a_max, args.steps, args.rounds,
                          args.out, args.format)
        return cmd_sweep(cfg, seed=args.seed)
    if args.command == "mac-sweep":
        cfg = MacSweepConfig(args.steps, args.out, args.format)
        return cmd_mac_sweep(cfg, seed=args.seed)
    if args.command == "verify":
        xs = args.x if args.x else [math.sqrt(0.9)]
        return cmd_verify(args.a, xs, args.trials, args.seed)
    if args.command == "povm":
        return cmd_povm(args.d, args.seed)
    if args.command == "asymptotics":
        bs = args.b if args.b else [1e-2, 1e-3, 1e-4]
        return cmd_asymptotics(bs)
    if args.command == "demo":
        return cmd_demo()
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
