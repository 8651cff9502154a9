"""Command-line front end.

Subcommands:
    apply     apply one fractional operator to a sequence file
    check     run randomized identity suites
    theorems  run monotonicity theorem campaigns

Exit codes: 0 pass, 1 identity violation or counterexample, 2 usage or
parse error, 3 domain error, 4 budget exceeded.

Input format for ``apply``: a JSON object {"origin": str, "direction":
"forward"|"backward", "values": [str, ...]} whose numbers are decimal or
"p/q" strings, parsed exactly by the rational backend.  A CSV file with
``t,value`` rows (consecutive integer t, ascending) is accepted for
forward integer-origin grids.  The environment variable FRAC_BACKEND
overrides --backend when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .backends import get_backend
from .dualities import (
    DEFAULT_TOLERANCE,
    IdentityId,
    run_identity_suite,
)
from .errors import (
    BudgetExceeded,
    DirectFormIntegerOrder,
    DiscfracError,
    DomainError,
    EmptyValues,
    GridTooShort,
)
from .grids import Direction, GridFunction, make_grid_function
from .kernels import fault_injection
from .monotone import THEOREMS, min_live_length, search_campaign
from .operators import Family, Formulation, Kind, OperatorSpec, Side, apply_operator

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4


@dataclass(frozen=True)
class RunConfig:
    backend: str = "floating"
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0
    k_cap: int = 64
    budget: int = 500_000

    def __post_init__(self):
        if self.tolerance <= 0:
            raise DomainError("tolerance must be positive")
        if self.budget <= 0:
            raise DomainError("budget must be positive")


def _scalar_str(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(x)


def _parse_number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse number {text!r}") from exc


def _read_grid(path: str, backend) -> GridFunction:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".csv") or ("," in text and not text.lstrip().startswith("{")):
        rows = [line.split(",") for line in text.strip().splitlines() if line.strip()]
        points = [_parse_number(r[0]) for r in rows]
        values = [_parse_number(r[1]) for r in rows]
        if any(p.denominator != 1 for p in points):
            raise DomainError("CSV input requires integer grid points")
        for prev, nxt in zip(points, points[1:]):
            if nxt - prev != 1:
                raise DomainError("CSV input requires consecutive ascending points")
        return make_grid_function(points[0], Direction.FORWARD, values, backend)
    record = json.loads(text)
    return make_grid_function(
        _parse_number(str(record["origin"])),
        Direction(record["direction"]),
        [_parse_number(str(v)) for v in record["values"]],
        backend,
    )


def _grid_record(grid: GridFunction, extra: dict | None = None) -> dict:
    rec = {
        "origin": str(grid.origin),
        "direction": grid.direction.value,
        "values": [_scalar_str(v) for v in grid.values],
    }
    if extra:
        rec.update(extra)
    return rec


def _write_json(record: dict, path: str | None) -> None:
    text = json.dumps(record, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_report(records: list[dict], path: str | None) -> None:
    text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _resolve_backend(args) -> object:
    name = os.environ.get("FRAC_BACKEND") or args.backend
    return get_backend(name)


def _domain_note(spec: OperatorSpec, grid: GridFunction) -> str:
    if grid.direction is Direction.FORWARD:
        note = f"points {grid.origin} + k for k = 0..{grid.length - 1}"
    else:
        note = f"points {grid.origin} - k for k = 0..{grid.length - 1}"
    if spec.family is Family.SUM and spec.kind is Kind.NABLA:
        note += " (value at the anchor is the empty-sum convention zero)"
    return note


def cmd_apply(args) -> int:
    backend = _resolve_backend(args)
    spec = OperatorSpec(
        Kind(args.kind),
        Side(args.side),
        Family(args.family),
        _parse_number(args.order),
        Formulation(args.form),
    )
    grid = _read_grid(args.input, backend)
    out = apply_operator(spec, grid, extended=args.extended)
    record = _grid_record(
        out,
        {
            "domain": _domain_note(spec, out),
            "operator": {
                "kind": spec.kind.value,
                "side": spec.side.value,
                "family": spec.family.value,
                "order": str(spec.order),
                "formulation": spec.formulation.value,
            },
            "backend": backend.name,
        },
    )
    _write_json(record, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    backend = _resolve_backend(args)
    if args.all or not args.id:
        ids = list(IdentityId)
    else:
        try:
            ids = [IdentityId(name) for name in args.id]
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
    config = RunConfig(
        backend=backend.name, tolerance=args.tolerance, seed=args.seed
    )
    def run():
        return run_identity_suite(
            ids,
            instances=args.instances,
            seed=config.seed,
            backend=backend,
            tolerance=config.tolerance,
        )

    if args.inject_error:
        with fault_injection(1 + 1e-6):
            results = run()
    else:
        results = run()
    records = []
    for r in results:
        rec = r.as_record()
        rec["config"] = {
            "backend": config.backend,
            "tolerance": config.tolerance,
            "seed": config.seed,
            "instances": args.instances,
        }
        records.append(rec)
    _write_report(records, args.report)
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.identity.value:20s} {status}  max_residual={r.max_abs_residual}",
              file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


def _parse_values(text: str) -> list[Fraction]:
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        return [Fraction(k) for k in range(lo, hi + 1)]
    return [_parse_number(part) for part in text.split(",") if part.strip()]


def cmd_theorems(args) -> int:
    if args.all or not args.id:
        ids = list(THEOREMS)
    else:
        for name in args.id:
            if name not in THEOREMS:
                raise DomainError(f"unknown theorem id {name!r}")
        ids = list(args.id)
    values = _parse_values(args.values)
    orders = [_parse_number(x) for x in args.nu.split(",")] if args.nu else None
    config = RunConfig(seed=args.seed, k_cap=args.k_cap, budget=args.budget)
    mode = "random" if args.random else "exhaustive"
    records = []
    any_counterexample = False
    for tid in ids:
        length = max(args.length, min_live_length(tid))
        results = search_campaign(
            tid, length, values, orders, mode, config.budget, config.seed, config.k_cap
        )
        for r in results:
            rec = r.as_record()
            rec["config"] = {
                "mode": mode,
                "seed": config.seed,
                "k_cap": config.k_cap,
                "budget": config.budget,
                "values": [str(v) for v in values],
            }
            if THEOREMS[tid].note:
                rec["note"] = THEOREMS[tid].note
            records.append(rec)
            if r.counterexamples:
                any_counterexample = True
    _write_report(records, args.report)
    for rec in records:
        n_ces = len(rec["counterexamples"])
        status = "pass" if n_ces == 0 else "FAIL"
        print(f"{rec['id']:10s} order={rec['order']:5s} {status}  "
              f"counterexamples={n_ces} witness={rec['witness'] is not None}",
              file=sys.stderr)
    return EXIT_VIOLATION if any_counterexample else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discfrac",
        description="Discrete fractional calculus operators and verification harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_apply = sub.add_parser("apply", help="apply a fractional operator to a sequence")
    p_apply.add_argument("--input", required=True)
    p_apply.add_argument("--output", default=None)
    p_apply.add_argument("--kind", choices=["delta", "nabla"], required=True)
    p_apply.add_argument("--side", choices=["left", "right"], default="left")
    p_apply.add_argument("--family", choices=["sum", "riemann", "caputo"], required=True)
    p_apply.add_argument("--order", required=True)
    p_apply.add_argument("--form", choices=["composed", "direct"], default="composed")
    p_apply.add_argument("--extended", action="store_true",
                         help="expose the direct form's extra near-anchor points")
    p_apply.add_argument("--backend", choices=["floating", "rational"], default="floating")
    p_apply.set_defaults(func=cmd_apply)

    p_check = sub.add_parser("check", help="run identity suites")
    p_check.add_argument("--id", action="append", default=[],
                         help="identity id (repeatable); default all")
    p_check.add_argument("--all", action="store_true")
    p_check.add_argument("--instances", type=int, default=50)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p_check.add_argument("--backend", choices=["floating", "rational"], default="floating")
    p_check.add_argument("--report", default=None)
    p_check.add_argument("--inject-error", action="store_true",
                         help="self-test: corrupt the kernels and expect failures")
    p_check.set_defaults(func=cmd_check)

    p_theo = sub.add_parser("theorems", help="run theorem campaigns")
    p_theo.add_argument("--id", action="append", default=[],
                        help="theorem id (repeatable); default all")
    p_theo.add_argument("--all", action="store_true")
    p_theo.add_argument("--exhaustive", action="store_true")
    p_theo.add_argument("--random", action="store_true")
    p_theo.add_argument("--length", type=int, default=5,
                        help="number of enumerated function values")
    p_theo.add_argument("--values", default="-1,0,1")
    p_theo.add_argument("--nu", default=None,
                        help="comma-separated orders; default three per range")
    p_theo.add_argument("--budget", type=int, default=500_000)
    p_theo.add_argument("--seed", type=int, default=0)
    p_theo.add_argument("--k-cap", type=int, default=64)
    p_theo.add_argument("--backend", choices=["floating", "rational"], default="floating")
    p_theo.add_argument("--report", default=None)
    p_theo.set_defaults(func=cmd_theorems)
    return parser


def _join_dashed_values(argv: list[str]) -> list[str]:
    # let "--values -1,0,1" through argparse, which would otherwise read
    # the negative list as an option string
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--values", "--nu") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _join_dashed_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DirectFormIntegerOrder as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, GridTooShort, EmptyValues) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DiscfracError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
