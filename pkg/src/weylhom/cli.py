"""Command-line front end.  Every subcommand writes one JSON record per line.

Exit status: 0 ok, 1 verification mismatch, 2 usage error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Any, Callable, Iterator, Optional, Sequence, TextIO

from .cpsi import cp_trace, psi_condition_general, psi_paths
from .errors import InvariantViolation, ParameterError, WeylHomError
from .fp import rank
from .genhom import generator_hset, generator_vector, predicted_dimension, verify_instance
from .props import DEFAULT_SEED, SUITES, run_suite
from .reduced import Variant, build_ek, closed_form_hset, solve_ek
from .relsys import build_relation_system
from .tabcomb import FamilyInstance, format_key

__all__ = ["GridSpec", "main", "WORKERS_ENV"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3
WORKERS_ENV = "WEYLHOM_WORKERS"

SUPPORT_LIMIT = 100_000
CSV_FIELDS = ["a", "b", "d", "p", "predicted", "computed", "match", "verified"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class GridSpec:
    a_range: tuple[int, int] = (2, 30)
    b_range: tuple[int, int] = (2, 8)
    d_range: tuple[int, int] = (2, 8)
    primes: tuple[int, ...] = (2, 3, 5)
    a_parity: str = "any"

    def instances(self) -> list[FamilyInstance]:
        out = []
        for p in self.primes:
            for b in range(self.b_range[0], self.b_range[1] + 1):
                for a in range(max(b, self.a_range[0]), self.a_range[1] + 1):
                    if self.a_parity == "even" and a % 2 or self.a_parity == "odd" and a % 2 == 0:
                        continue
                    for d in range(self.d_range[0], self.d_range[1] + 1):
                        out.append(FamilyInstance(a, b, d, p))
        if not out:
            raise UsageError("grid is empty after filtering")
        return out


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def _ordered_map(fn: Callable[[Any], Any], items: Sequence[Any]) -> Iterator[Any]:
    n = _workers()
    if n == 1:
        return map(fn, items)
    # Executor.map yields in submission order, so output stays deterministic
    pool = ThreadPoolExecutor(max_workers=n)
    return pool.map(fn, items)


class Writer:
    """Single sink for all records."""

    def __init__(self, stream: TextIO):
        self.stream = stream

    def record(self, rec: dict[str, Any]) -> None:
        self.stream.write(json.dumps(rec, sort_keys=False) + "\n")


def _instance(args: argparse.Namespace, p: Optional[int] = None) -> FamilyInstance:
    return FamilyInstance(args.a, args.b, args.d, args.p if p is None else p)


def cmd_dim(args: argparse.Namespace, out: Writer) -> int:
    inst = _instance(args)
    predicted = predicted_dimension(inst)
    system = build_relation_system(inst)
    computed = system.width - rank(system.rows, system.width, inst.p)
    out.record({"a": inst.a, "b": inst.b, "d": inst.d, "p": inst.p,
                "predicted": predicted, "computed": computed, "match": predicted == computed})
    return EXIT_OK if predicted == computed else EXIT_MISMATCH


def cmd_generator(args: argparse.Namespace, out: Writer) -> int:
    inst = _instance(args, p=2)
    if inst.a % 2:
        raise UsageError(f"a = {inst.a} is odd: Hom is zero in characteristic 2, so there is no generator")
    if args.no_verify:
        h = generator_hset(inst)
        size = sum(comb(inst.d, h_) for h_ in h.slices())
        rec = {"a": inst.a, "b": inst.b, "d": inst.d, "p": 2, "variant": h.variant.value,
               "seed": h.seed, "members": list(h.members), "slices": list(h.slices()),
               "support_size": size}
        if args.support:
            if size > SUPPORT_LIMIT:
                raise UsageError(f"support has {size} keys; listing is capped at {SUPPORT_LIMIT}")
            rec["support"] = [format_key(k) for k in generator_vector(inst).support()]
        out.record(rec)
        return EXIT_OK
    report = verify_instance(inst)
    rec = report.to_record(with_support=True)
    out.record(rec)
    return EXIT_OK if report.verified else EXIT_MISMATCH


def _grid_row(inst: FamilyInstance) -> dict[str, Any]:
    return verify_instance(inst).to_record()


def cmd_grid(args: argparse.Namespace, out: Writer) -> int:
    spec = GridSpec(
        a_range=(args.a_min, args.a_max),
        b_range=(args.b_min, args.b_max),
        d_range=(args.d_min, args.d_max),
        primes=tuple(args.primes),
        a_parity=args.a_parity,
    )
    instances = spec.instances()
    mismatches = 0
    csv_writer = None
    if args.csv:
        csv_writer = csv.DictWriter(out.stream, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
        csv_writer.writeheader()
    for rec in _ordered_map(_grid_row, instances):
        if not (rec["match"] and rec["verified"]):
            mismatches += 1
        if csv_writer is not None:
            csv_writer.writerow(rec)
        else:
            out.record(rec)
    summary = {"summary": "grid", "instances": len(instances), "mismatches": mismatches}
    if csv_writer is not None:
        sys.stderr.write(json.dumps(summary) + "\n")
    else:
        out.record(summary)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_ek(args: argparse.Namespace, out: Writer) -> int:
    variant = Variant(args.variant)
    solved = solve_ek(build_ek(args.k, args.l, variant))
    closed = closed_form_hset(args.k, args.l, variant)
    agree = solved == closed or (closed is None and args.l == 0 and solved is not None and solved.members == (0,))
    out.record({
        "k": args.k, "l": args.l, "variant": variant.value,
        "survivors": list(solved.members) if solved else [],
        "seed": solved.seed if solved else None,
        "closed_form": list(closed.members) if closed else None,
        "agree": agree,
    })
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_psi(args: argparse.Namespace, out: Writer) -> int:
    inst = _instance(args, p=2)
    paths = psi_paths(inst)
    general = psi_condition_general(inst.lam, inst.mu, 2)
    agree = paths.agree and general == paths.arithmetic
    out.record({"a": inst.a, "b": inst.b, "d": inst.d, "arithmetic": paths.arithmetic,
                "seed": paths.seed, "kernel": paths.kernel, "general": general,
                "agree": agree, "psi_nonzero": paths.kernel if agree else None})
    if not agree:
        raise InvariantViolation("psi evaluations disagree")
    return EXIT_OK


def cmd_cp(args: argparse.Namespace, out: Writer) -> int:
    trace = cp_trace(args.a, args.d)
    out.record(trace.to_record())
    return EXIT_OK if trace.conclusion else EXIT_MISMATCH


def cmd_props(args: argparse.Namespace, out: Writer) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = list(_ordered_map(lambda n: run_suite(n, args.seed, args.count), names))
    for res in results:
        out.record(res.to_record())
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylhom",
        description="Hom between Weyl modules Delta(a, b, 1^d) -> Delta(a+d, b).",
    )
    parser.add_argument("--out", metavar="PATH", help="write records to PATH instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def abd(p: argparse.ArgumentParser, with_p: bool = True) -> None:
        p.add_argument("--a", type=_nonneg, required=True)
        p.add_argument("--b", type=_nonneg, required=True)
        p.add_argument("--d", type=_nonneg, required=True)
        if with_p:
            p.add_argument("--p", type=_nonneg, default=2)

    s = sub.add_parser("dim", help="predicted and computed dimension of one instance")
    abd(s)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("generator", help="closed-form generator in characteristic 2")
    abd(s, with_p=False)
    s.add_argument("--no-verify", action="store_true", help="skip the kernel check (for large d)")
    s.add_argument("--support", action="store_true", help="with --no-verify, list the support")
    s.set_defaults(func=cmd_generator)

    s = sub.add_parser("grid", help="verify every instance of a parameter grid")
    s.add_argument("--a-min", type=_nonneg, default=2)
    s.add_argument("--a-max", type=_nonneg, default=30)
    s.add_argument("--b-min", type=_nonneg, default=2)
    s.add_argument("--b-max", type=_nonneg, default=8)
    s.add_argument("--d-min", type=_nonneg, default=2)
    s.add_argument("--d-max", type=_nonneg, default=8)
    s.add_argument("--primes", type=_primes, default=[2, 3, 5])
    s.add_argument("--a-parity", choices=("any", "even", "odd"), default="any")
    s.add_argument("--csv", action="store_true", help="CSV rows instead of JSON lines")
    s.set_defaults(func=cmd_grid)

    s = sub.add_parser("ek", help="solve E_k by elimination and compare with the closed form")
    s.add_argument("--k", type=_nonneg, required=True, help="k, or gamma for the even-odd variant")
    s.add_argument("--l", type=_nonneg, required=True)
    s.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.EVEN_EVEN.value)
    s.set_defaults(func=cmd_ek)

    s = sub.add_parser("psi", help="three-way check of the all-ones map psi (p = 2)")
    abd(s, with_p=False)
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("cp", help="Carter-Payne case trace for (a, 2, 1^d)")
    s.add_argument("--a", type=_nonneg, required=True)
    s.add_argument("--d", type=_nonneg, required=True)
    s.set_defaults(func=cmd_cp)

    s = sub.add_parser("props", help="seeded property suites")
    s.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--count", type=_nonneg, default=200)
    s.set_defaults(func=cmd_props)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    stream: TextIO = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    out = Writer(stream)
    try:
        return args.func(args, out)
    except (UsageError, ParameterError) as exc:
        sys.stderr.write(f"weylhom: error: {exc}\n")
        out.record({"error": "usage", "message": str(exc)})
        return EXIT_USAGE
    except InvariantViolation as exc:
        sys.stderr.write(f"weylhom: invariant violation: {exc}\n")
        out.record({"error": "invariant", "message": str(exc)})
        return EXIT_INVARIANT
    except WeylHomError as exc:
        sys.stderr.write(f"weylhom: error: {exc}\n")
        return EXIT_USAGE
    finally:
        if stream is not sys.stdout:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())
