"""Command-line front end.

    ideal-lattices zeta-d --d 3 --N 1000 --format csv
    ideal-lattices count-ideals --poly 1,0,1 --N 100
    ideal-lattices crosscheck --d 2 --N 100
    ideal-lattices density --d 3 --N 100000
    ideal-lattices fit --source zeta-d:2 --N 1000000 --sigma 2 --w 1

Exit codes: 0 success, 1 usage or invalid input, 2 crosscheck mismatch,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass
from functools import partial
from pathlib import Path

from . import __version__
from ._parallel import default_threads, ordered_map
from .asymptotics import density_ratio, fit_growth
from .dirichlet import (
    CoeffTable,
    abelian_group_coeffs,
    partial_sums,
    sublattice_coeffs,
    zeta_d_coeffs,
    zeta_ZX_coeffs,
)
from .errors import ResourceError
from .lattice import DEFAULT_BUDGET, count_idealizable
from .numberfield import dedekind_coeffs
from .quotient_ring import MonicPoly, ideal_coeffs

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3
CACHE_ENV = "IDEAL_LATTICES_CACHE_DIR"

# crosscheck compares brute force against this; tests swap it for a broken one
_formula_table = zeta_d_coeffs


@dataclass(frozen=True)
class RunConfig:
    command: str
    N: int
    d: int | None = None
    poly: MonicPoly | None = None
    fmt: str = "csv"
    cache_dir: Path | None = None
    budget: int = DEFAULT_BUDGET
    threads: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"--N must be >= 1, got {self.N}")
        if self.budget < 1:
            raise ValueError(f"--budget must be >= 1, got {self.budget}")
        if self.threads < 1:
            raise ValueError(f"--threads must be >= 1, got {self.threads}")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"--format must be csv or json, got {self.fmt!r}")


# -- on-disk cache ------------------------------------------------------------


class TableCache:
    """Coefficient tables on disk, keyed by (kind, parameter, N, version).

    Entries written by another version are ignored and overwritten.
    """

    def __init__(self, root: Path | None):
        self.root = root

    def _key(self, kind: str, param: str, N: int) -> dict:
        return {"kind": kind, "param": param, "N": N, "version": __version__}

    def _path(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:24]
        return self.root / f"{key['kind']}-{digest}.json"

    def load(self, kind: str, param: str, N: int) -> CoeffTable | None:
        if self.root is None:
            return None
        key = self._key(kind, param, N)
        path = self._path(key)
        try:
            entry = json.loads(path.read_text())
            if entry.get("key") != key:
                return None
            return CoeffTable.from_json(json.dumps(entry["table"]))
        except (OSError, ValueError, KeyError, TypeError):
            return None

    def store(self, kind: str, param: str, N: int, table: CoeffTable) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        key = self._key(kind, param, N)
        path = self._path(key)
        entry = {"key": key, "table": json.loads(table.to_json())}
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps(entry))
        os.replace(tmp, path)


# -- table sources ------------------------------------------------------------

SOURCES = ("zeta-d:<d>", "sublattices:<d>", "zx", "abelian", "poly:<coeffs>", "dedekind:<coeffs>")


def parse_source(text: str) -> tuple[str, str]:
    """Split ``kind[:param]`` and canonicalize the parameter."""
    kind, _, param = text.partition(":")
    if kind in ("zeta-d", "sublattices"):
        try:
            d = int(param)
        except ValueError:
            raise ValueError(f"source {text!r} needs an integer dimension, e.g. {kind}:2") from None
        if d < 1:
            raise ValueError(f"dimension must be >= 1 in {text!r}")
        return kind, str(d)
    if kind in ("poly", "dedekind"):
        return kind, MonicPoly.parse(param).canonical()
    if kind in ("zx", "abelian") and not param:
        return kind, ""
    raise ValueError(f"unknown source {text!r}; expected one of {', '.join(SOURCES)}")


def build_table(kind: str, param: str, cfg: RunConfig) -> CoeffTable:
    cache = TableCache(cfg.cache_dir)
    table = cache.load(kind, param, cfg.N)
    if table is not None:
        return table
    if kind == "zeta-d":
        table = zeta_d_coeffs(int(param), cfg.N)
    elif kind == "sublattices":
        table = sublattice_coeffs(int(param), cfg.N)
    elif kind == "zx":
        table = zeta_ZX_coeffs(cfg.N)
    elif kind == "abelian":
        table = abelian_group_coeffs(cfg.N)
    elif kind == "poly":
        table = ideal_coeffs(MonicPoly.parse(param), cfg.N, cfg.budget, cfg.threads)
    elif kind == "dedekind":
        table = dedekind_coeffs(MonicPoly.parse(param), cfg.N, cfg.budget)
    else:
        raise ValueError(f"unknown table kind {kind!r}")
    cache.store(kind, param, cfg.N, table)
    return table


# -- output -------------------------------------------------------------------


def _emit_table(table: CoeffTable, fmt: str) -> str:
    return table.to_csv() if fmt == "csv" else table.to_json() + "\n"


def _emit_rows(report: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- commands -----------------------------------------------------------------


def cmd_zeta_d(cfg: RunConfig) -> tuple[str, int]:
    return _emit_table(build_table("zeta-d", str(cfg.d), cfg), cfg.fmt), EXIT_OK


def cmd_count_ideals(cfg: RunConfig) -> tuple[str, int]:
    return _emit_table(build_table("poly", cfg.poly.canonical(), cfg), cfg.fmt), EXIT_OK


def _bruteforce_or_none(d: int, budget: int, n: int) -> int | None:
    try:
        return count_idealizable(d, n, budget)
    except ResourceError:
        return None


def cmd_crosscheck(cfg: RunConfig) -> tuple[str, int]:
    """Formula against brute force for every ``n <= N``; budget overruns are skips."""
    formula = _formula_table(cfg.d, cfg.N)
    brute = ordered_map(partial(_bruteforce_or_none, cfg.d, cfg.budget), range(1, cfg.N + 1), cfg.threads)
    rows = []
    for n, b in enumerate(brute, start=1):
        f = formula[n]
        rows.append({
            "n": n,
            "formula": str(f),
            "bruteforce": None if b is None else str(b),
            "equal": None if b is None else f == b,
        })
    mismatches = [r["n"] for r in rows if r["equal"] is False]
    skipped = [r["n"] for r in rows if r["equal"] is None]
    report = {
        "d": cfg.d,
        "n_max": cfg.N,
        "budget": cfg.budget,
        "mismatches": mismatches,
        "skipped": skipped,
        "rows": rows,
    }
    return _emit_rows(report, rows, cfg.fmt), EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_density(cfg: RunConfig) -> tuple[str, int]:
    rows = [{"N": n, "ratio": r} for n, r in density_ratio(cfg.d, cfg.N)]
    return _emit_rows({"d": cfg.d, "checkpoints": rows}, rows, cfg.fmt), EXIT_OK


def cmd_fit(cfg: RunConfig, source: str, sigma: float, w: int) -> tuple[str, int]:
    kind, param = parse_source(source)
    fit = fit_growth(partial_sums(build_table(kind, param, cfg)), sigma, w)
    report = {"source": f"{kind}:{param}" if param else kind, **fit.to_dict()}
    return _emit_rows(report, report["checkpoints"], cfg.fmt), EXIT_OK


# -- argument parsing ---------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _poly(text: str) -> MonicPoly:
    try:
        return MonicPoly.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ideal-lattices", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--N", type=_positive, required=True, help="truncation bound / largest index")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    common.add_argument(
        "--cache-dir", type=Path, default=None, help=f"table cache directory (default: ${CACHE_ENV})"
    )
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="max bases per search")
    common.add_argument("--threads", type=_positive, default=None, help="worker processes (default: all)")

    p = sub.add_parser("zeta-d", parents=[common], help="ideal-lattice counts in dimension d")
    p.add_argument("--d", type=_positive, required=True)

    p = sub.add_parser("count-ideals", parents=[common], help="ideal counts of Z[X]/(f)")
    p.add_argument("--poly", type=_poly, required=True, help="ascending coefficients incl. the leading 1")

    p = sub.add_parser("crosscheck", parents=[common], help="formula vs brute force for n <= N")
    p.add_argument("--d", type=_positive, required=True)

    p = sub.add_parser("density", parents=[common], help="share of ideal lattices among all sublattices")
    p.add_argument("--d", type=_positive, required=True)

    p = sub.add_parser("fit", parents=[common], help="growth constant of a table's partial sums")
    p.add_argument("--source", required=True, help=" | ".join(SOURCES))
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--w", type=_positive, default=1, help="pole order")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    reports = ("crosscheck", "density", "fit")
    fmt = args.fmt or ("json" if args.command in reports else "csv")
    cache = args.cache_dir or (Path(os.environ[CACHE_ENV]) if os.environ.get(CACHE_ENV) else None)
    return RunConfig(
        command=args.command,
        N=args.N,
        d=getattr(args, "d", None),
        poly=getattr(args, "poly", None),
        fmt=fmt,
        cache_dir=cache,
        budget=args.budget,
        threads=args.threads or default_threads(),
    )


def run(argv: list[str] | None = None) -> tuple[str, int]:
    """Parse ``argv`` and return ``(stdout text, exit code)``."""
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    if cfg.command == "zeta-d":
        return cmd_zeta_d(cfg)
    if cfg.command == "count-ideals":
        return cmd_count_ideals(cfg)
    if cfg.command == "crosscheck":
        return cmd_crosscheck(cfg)
    if cfg.command == "density":
        if cfg.d < 2:
            raise ValueError("density needs --d >= 2 (for d=1 the ratio is identically 1)")
        return cmd_density(cfg)
    return cmd_fit(cfg, args.source, args.sigma, args.w)


def main(argv: list[str] | None = None) -> int:
    try:
        out, code = run(argv)
    except ResourceError as exc:
        print(f"ideal-lattices: resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"ideal-lattices: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    sys.stdout.flush()
    return code
