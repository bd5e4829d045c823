"""Command-line front end: discriminate, suite, bound, compile, sample-pairs.

Gate specs accept named gates (I, X, Y, Z, H), eight comma-separated numbers
(re/im pairs, row-major), or waveplate triples written ``wp:q,h,q`` in
degrees.  Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .comb import evaluate_comb, objective_operator, optimize_fixed_order
from .experiment import (
    NoiseParams,
    run_pauli_suite,
    run_random_suite,
    run_state_sweep,
)
from .gates import RandomSource, classify_pair, pairs_to_csv, sample_pairs
from .linalg import PAULI_GATES, HAD, frobenius_distance_up_to_phase, require_unitary
from .switch import Verdict, exit_probabilities
from .waveplates import decompose, table_gate_pairs, triple_to_unitary

NAMED_GATES = dict(PAULI_GATES, H=HAD)


class UsageError(ValueError):
    pass


def parse_gate(spec: str) -> np.ndarray:
    spec = spec.strip()
    if spec in NAMED_GATES:
        return NAMED_GATES[spec].copy()
    if spec.startswith("wp:"):
        parts = spec[3:].split(",")
        if len(parts) != 3:
            raise UsageError(f"waveplate spec needs three angles: {spec!r}")
        try:
            q1, h, q2 = (float(p) for p in parts)
        except ValueError as exc:
            raise UsageError(f"bad waveplate angle in {spec!r}") from exc
        return triple_to_unitary((q1, h, q2))
    parts = spec.split(",")
    if len(parts) == 8:
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise UsageError(f"bad matrix entry in {spec!r}") from exc
        m = np.array(
            [
                [vals[0] + 1j * vals[1], vals[2] + 1j * vals[3]],
                [vals[4] + 1j * vals[5], vals[6] + 1j * vals[7]],
            ]
        )
        try:
            return require_unitary(m)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"cannot parse gate spec {spec!r}")


def parse_state(spec: str) -> np.ndarray:
    named = {
        "+": np.array([1.0, 1.0]) / np.sqrt(2),
        "-": np.array([1.0, -1.0]) / np.sqrt(2),
        "0": np.array([1.0, 0.0]),
        "1": np.array([0.0, 1.0]),
        "H": np.array([1.0, 0.0]),
        "V": np.array([0.0, 1.0]),
    }
    if spec in named:
        return named[spec].astype(complex)
    parts = spec.split(",")
    if len(parts) == 4:
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise UsageError(f"bad state entry in {spec!r}") from exc
        psi = np.array([vals[0] + 1j * vals[1], vals[2] + 1j * vals[3]])
        norm = np.linalg.norm(psi)
        if norm < 1e-12:
            raise UsageError("state has zero norm")
        return psi / norm
    raise UsageError(f"cannot parse state spec {spec!r}")


def _load_noise(path: str | None) -> NoiseParams:
    if path is None:
        return NoiseParams()
    with open(path) as fh:
        data = json.load(fh)
    allowed = set(NoiseParams.__dataclass_fields__)
    unknown = set(data) - allowed
    if unknown:
        raise UsageError(f"unknown noise keys: {sorted(unknown)}")
    return NoiseParams(**data)


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def cmd_discriminate(args) -> int:
    u1 = parse_gate(args.u1)
    u2 = parse_gate(args.u2)
    psi = parse_state(args.state)
    outcome = exit_probabilities(u1, u2, psi)
    promise = classify_pair(u1, u2, tol=1e-6)
    payload = {
        "p0": round(outcome.p0, 12),
        "p1": round(outcome.p1, 12),
        "verdict": outcome.verdict.value,
    }
    if promise is Verdict.NEITHER:
        payload["warning"] = "gates neither commute nor anti-commute; verdict unreliable"
    _emit(payload, args.json)
    return 0


def cmd_suite(args) -> int:
    noise = _load_noise(args.noise)
    rng = RandomSource(args.seed)
    runners = {
        "pauli": run_pauli_suite,
        "random100": run_random_suite,
        "statesweep": run_state_sweep,
    }
    report = runners[args.which](noise, rng)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{args.which}_settings.csv"
    with open(csv_path, "w", newline="") as fh:
        csv.writer(fh).writerows(report.csv_rows())
    json_path = out / f"{args.which}_summary.json"
    json_path.write_text(report.to_json() + "\n")
    _emit(
        {
            "suite": args.which,
            "mean_success": round(report.mean_success, 6),
            "success_std": round(report.success_std, 6),
            "settings_csv": str(csv_path),
            "summary_json": str(json_path),
        },
        args.json,
    )
    return 0


def cmd_bound(args) -> int:
    rng = RandomSource(args.seed)
    omega = objective_operator(int(args.samples), rng)
    result = optimize_fixed_order(omega)
    pairs = table_gate_pairs()
    table_success = evaluate_comb(result.comb, pairs)
    ideal = [
        exit_probabilities(p.u1, p.u2).p0
        if p.label is Verdict.COMMUTE
        else exit_probabilities(p.u1, p.u2).p1
        for p in pairs
    ]
    payload = {
        "p_succ": round(result.p_succ, 6),
        "iterations": result.iterations,
        "primal_residual": result.primal_residual,
        "residuals": {k: float(v) for k, v in result.residuals.items()},
        "table_pairs_success": round(table_success, 6),
        "switch_success_same_pairs": round(float(np.mean(ideal)), 6),
        "samples": int(args.samples),
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        rows = [["pair", "label", "correct_probability"]]
        for pair in pairs:
            i = 0 if pair.label is Verdict.COMMUTE else 1
            from .comb import probability_from_comb

            rows.append(
                [
                    pair.seed_record.get("table_row", ""),
                    pair.label.value,
                    f"{probability_from_comb(result.comb, pair.u1, pair.u2, i):.6f}",
                ]
            )
        with open(out / "bound_evaluation.csv", "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
        payload["evaluation_csv"] = str(out / "bound_evaluation.csv")
    _emit(payload, args.json)
    return 0


def cmd_compile(args) -> int:
    u = parse_gate(args.gate)
    triple = decompose(u)
    resid = frobenius_distance_up_to_phase(triple_to_unitary(triple), u)
    _emit(
        {
            "q_first": round(triple.q_first, 6),
            "h": round(triple.h, 6),
            "q_last": round(triple.q_last, 6),
            "roundtrip_residual": resid,
        },
        args.json,
    )
    return 0


def cmd_sample_pairs(args) -> int:
    rng = RandomSource(args.seed)
    pairs = sample_pairs(rng, args.commuting, args.anticommuting)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    pairs_to_csv(pairs, out)
    _emit({"written": str(out), "pairs": len(pairs)}, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qswitch",
        description="Gate-order-superposition commutation testing toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discriminate", help="run the switch protocol on two gates")
    p.add_argument("--u1", required=True, help="gate spec for the first gate")
    p.add_argument("--u2", required=True, help="gate spec for the second gate")
    p.add_argument("--state", default="+", help="input state spec (default '+')")
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser("suite", help="simulate an experiment suite")
    p.add_argument("which", choices=["pauli", "random100", "statesweep"])
    p.add_argument("--noise", help="JSON file of noise parameter overrides")
    p.add_argument("--out", default="suite_out", help="output directory")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("bound", help="compute the fixed-order success bound")
    p.add_argument("--samples", type=float, default=2e5, help="Haar samples per class")
    p.add_argument("--out", help="directory for the per-pair evaluation CSV")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("compile", help="compile a gate to waveplate angles")
    p.add_argument("gate", help="gate spec")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("sample-pairs", help="export random labeled gate pairs")
    p.add_argument("--commuting", type=int, default=50)
    p.add_argument("--anticommuting", type=int, default=50)
    p.add_argument("--out", default="pairs.csv")
    p.set_defaults(func=cmd_sample_pairs)

    for sp in sub.choices.values():
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", help="machine-parseable output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
