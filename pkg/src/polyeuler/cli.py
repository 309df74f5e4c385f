"""Command-line front end: family tables, the verification suite, and
Stirling-table export, all in exact "p/q" formats.

Exit codes: 0 success (for ``verify``: every must-pass identity held, even if
as-printed variants recorded discrepancies), 1 a must-pass identity failed,
2 configuration could not be parsed, 3 the truncation order is too small for
the requested range.

Defaults can also come from a JSON config file (``--config``); explicit
command-line flags win.  The default output directory is the
``POLYEULER_OUT_DIR`` environment variable, falling back to the working
directory.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import OrderExceeded
from .families import (
    UnknownIdentity,
    deg_poly_euler,
    poly_euler,
)
from .identities import (
    DEFAULT_K_SET,
    N_CLASSICAL,
    must_pass_ok,
    reports_to_document,
    run_suite,
)
from .sequences import (
    DEFAULT_ORDER,
    classical_family,
    degenerate_family,
    poly_bernoulli,
    stirling_table,
)
from .serialize import frac_str, parse_frac, poly_to_lists

OUT_DIR_ENV = "POLYEULER_OUT_DIR"

#: family name -> (takes an index k, member builder)
FAMILIES = {
    "bernoulli": (False, lambda n, k: classical_family("bernoulli", n)),
    "euler": (False, lambda n, k: classical_family("euler", n)),
    "deg_bernoulli": (False, lambda n, k: degenerate_family("bernoulli", n)),
    "deg_euler": (False, lambda n, k: degenerate_family("euler", n)),
    "poly_bernoulli": (True, lambda n, k: poly_bernoulli(n, k)),
    "deg_poly_bernoulli": (True, lambda n, k: poly_bernoulli(n, k, degenerate=True)),
    "poly_euler": (True, lambda n, k: poly_euler(n, k)),
    "deg_poly_euler": (True, lambda n, k: deg_poly_euler(n, k)),
}


class ConfigError(Exception):
    """Invalid configuration; the message names the offending field."""


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    kind: str | None = None
    degenerate: bool = False
    n_max: int | None = None
    k_values: tuple[int, ...] = (1,)
    lambda_mode: Fraction | None = None  # None means symbolic
    x_mode: Fraction | None = None
    order: int | None = None
    out_format: str = "json"
    out_path: str | None = None
    ids: tuple[str, ...] | None = None
    variants: str = "all"


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in str(text).split(",") if part.strip() != "")
    except ValueError:
        raise ConfigError(f"{flag}: expected a comma-separated list of integers, got {text!r}")
    if not values:
        raise ConfigError(f"{flag}: list is empty")
    return values


def _parse_symbolic_or_frac(text: str, flag: str) -> Fraction | None:
    if text == "symbolic":
        return None
    try:
        return parse_frac(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f'{flag}: expected "symbolic" or an exact "p/q" value, got {text!r}')


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"--config: cannot read {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--config: {path!r} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"--config: {path!r} must hold a JSON object")
    return {str(key).replace("-", "_"): value for key, value in data.items()}


def _merged(cli_value, file_config: dict, key: str, default):
    if cli_value is not None:
        return cli_value
    if key in file_config and file_config[key] is not None:
        return file_config[key]
    return default


def _resolve_out(path: str | None, default_name: str) -> Path:
    if path is not None:
        return Path(path)
    base = os.environ.get(OUT_DIR_ENV) or "."
    return Path(base) / default_name


def _effective_order(config: RunConfig, n_needed: int) -> int:
    if config.order is not None:
        if config.order < n_needed + 2:
            raise OrderExceeded(
                f"--order: {config.order} is below n_max + 2 = {n_needed + 2}"
            )
        return config.order
    return max(DEFAULT_ORDER, n_needed + 2)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_table(config: RunConfig) -> int:
    uses_k, builder = FAMILIES[config.family]
    n_max = 8 if config.n_max is None else config.n_max
    order = _effective_order(config, n_max)
    k_list: tuple[int | None, ...] = config.k_values if uses_k else (None,)

    rows = []
    for k in k_list:
        for n in range(n_max + 1):
            member = builder(n, k)
            member = member.specialize(lam=config.lambda_mode)
            if config.x_mode is not None:
                member = member.specialize(x=config.x_mode)
            rows.append((n, k, member))

    out = _resolve_out(config.out_path, f"table_{config.family}.{config.out_format}")
    if config.out_format == "json":
        document = {
            "schema": "family-table/1",
            "generated_at": _timestamp(),
            "family": config.family,
            "n_max": n_max,
            "k": list(config.k_values) if uses_k else None,
            "lambda": "symbolic" if config.lambda_mode is None else frac_str(config.lambda_mode),
            "x": "symbolic" if config.x_mode is None else frac_str(config.x_mode),
            "order": order,
            "rows": [
                {"n": n, "k": k, "coeffs": poly_to_lists(member)}
                for n, k, member in rows
            ],
        }
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["family", "n", "k", "polynomial"])
        for n, k, member in rows:
            writer.writerow([config.family, n, "" if k is None else k, str(member)])
        text = buffer.getvalue()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_verify(config: RunConfig) -> int:
    n_for_order = config.n_max if config.n_max is not None else N_CLASSICAL
    order = _effective_order(config, n_for_order) if config.order is not None else None
    reports = run_suite(
        n_max=config.n_max,
        k_set=config.k_values,
        variants=config.variants,
        order=order,
        ids=config.ids,
    )
    document = reports_to_document(
        reports,
        config={
            "n_max": config.n_max,
            "k_set": list(config.k_values),
            "variants": config.variants,
            "order": order,
            "ids": list(config.ids) if config.ids is not None else None,
        },
        generated_at=_timestamp(),
    )
    out = _resolve_out(config.out_path, "verify_report.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    for r in reports:
        marker = "pass" if r.verdict == "pass" else "FAIL"
        extra = " (empty range)" if r.empty else ""
        print(f"{marker:4}  {r.id:28} [{r.variant}]{extra}")
    summary = document["summary"]
    print(
        f"checked {summary['total']} registrations: {summary['passed']} passed, "
        f"{summary['failed']} failed (discrepancy_count={summary['discrepancy_count']}), "
        f"must_pass_ok={summary['must_pass_ok']}"
    )
    print(f"report written to {out}")
    return 0 if must_pass_ok(reports) else 1


def cmd_export_stirling(config: RunConfig) -> int:
    n_max = 10 if config.n_max is None else config.n_max
    table = stirling_table(config.kind, config.degenerate)
    rows = [(n, j, table.entry(n, j)) for n in range(n_max + 1) for j in range(n + 1)]

    suffix = "_degenerate" if config.degenerate else ""
    out = _resolve_out(
        config.out_path, f"stirling_{config.kind}{suffix}.{config.out_format}"
    )
    if config.out_format == "json":
        document = {
            "schema": "stirling-table/1",
            "generated_at": _timestamp(),
            "kind": config.kind,
            "degenerate": config.degenerate,
            "n_max": n_max,
            "rows": [
                {"n": n, "k": j, "value": [frac_str(c) for c in value.coeffs]}
                for n, j, value in rows
            ],
        }
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["kind", "degenerate", "n", "k", "value"])
        for n, j, value in rows:
            writer.writerow([config.kind, config.degenerate, n, j, str(value)])
        text = buffer.getvalue()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    print(f"wrote {len(rows)} entries to {out}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyeuler",
        description="Exact tables and identity verification for poly-Euler families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n-max", type=int, default=None, help="largest member index")
        p.add_argument("--order", type=int, default=None, help="truncation order override")
        p.add_argument("--format", choices=("json", "csv"), default=None, dest="out_format")
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--config", default=None, help="JSON config file with defaults")

    p_table = sub.add_parser("table", help="tabulate family members in exact form")
    p_table.add_argument("--family", choices=sorted(FAMILIES), default=None)
    p_table.add_argument("--k", default=None, help="comma-separated index list")
    p_table.add_argument("--lambda", dest="lambda_mode", default=None, help="symbolic or p/q")
    p_table.add_argument("--x", dest="x_mode", default=None, help="symbolic or p/q")
    common(p_table)

    p_verify = sub.add_parser("verify", help="run the identity verification suite")
    p_verify.add_argument("--k", default=None, help="comma-separated index list")
    p_verify.add_argument("--ids", default=None, help="comma-separated identity ids")
    p_verify.add_argument("--variants", choices=("all", "printed-only"), default=None)
    common(p_verify)

    p_stir = sub.add_parser("export-stirling", help="dump a Stirling number table")
    p_stir.add_argument("--kind", choices=("first", "second"), default=None)
    p_stir.add_argument("--degenerate", action="store_true", default=False)
    common(p_stir)

    return parser


def _build_config(args: argparse.Namespace) -> RunConfig:
    file_config = _load_config_file(args.config)
    config = RunConfig(command=args.command)

    config.n_max = _merged(args.n_max, file_config, "n_max", None)
    if config.n_max is not None:
        config.n_max = int(config.n_max)
        if config.n_max < 0:
            raise ConfigError(f"--n-max: must be nonnegative, got {config.n_max}")
    config.order = _merged(args.order, file_config, "order", None)
    if config.order is not None:
        config.order = int(config.order)
    config.out_format = _merged(args.out_format, file_config, "format", "json")
    if config.out_format not in ("json", "csv"):
        raise ConfigError(f"--format: expected json or csv, got {config.out_format!r}")
    config.out_path = _merged(args.out, file_config, "out", None)

    if args.command == "table":
        config.family = _merged(args.family, file_config, "family", None)
        if config.family is None:
            raise ConfigError("--family: required for the table command")
        if config.family not in FAMILIES:
            raise ConfigError(f"--family: unknown family {config.family!r}")
        config.k_values = _parse_int_list(
            _merged(args.k, file_config, "k", "1"), "--k"
        )
        config.lambda_mode = _parse_symbolic_or_frac(
            str(_merged(args.lambda_mode, file_config, "lambda", "symbolic")), "--lambda"
        )
        config.x_mode = _parse_symbolic_or_frac(
            str(_merged(args.x_mode, file_config, "x", "symbolic")), "--x"
        )
    elif args.command == "verify":
        config.k_values = _parse_int_list(
            _merged(args.k, file_config, "k", ",".join(str(k) for k in DEFAULT_K_SET)),
            "--k",
        )
        ids = _merged(args.ids, file_config, "ids", None)
        if ids is not None:
            parts = tuple(part.strip() for part in str(ids).split(",") if part.strip())
            if not parts:
                raise ConfigError("--ids: list is empty")
            config.ids = parts
        config.variants = _merged(args.variants, file_config, "variants", "all")
        if config.variants not in ("all", "printed-only"):
            raise ConfigError(f"--variants: expected all or printed-only, got {config.variants!r}")
    elif args.command == "export-stirling":
        config.kind = _merged(args.kind, file_config, "kind", None)
        if config.kind not in ("first", "second"):
            raise ConfigError(f"--kind: expected first or second, got {config.kind!r}")
        config.degenerate = bool(args.degenerate or file_config.get("degenerate", False))

    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _build_config(args)
        if args.command == "table":
            return cmd_table(config)
        if args.command == "verify":
            return cmd_verify(config)
        return cmd_export_stirling(config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except UnknownIdentity as exc:
        print(f"unknown identity: {exc}", file=sys.stderr)
        return 2
    except OrderExceeded as exc:
        print(f"truncation order too small: {exc}", file=sys.stderr)
        return 3


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
