"""Command-line front end.

Exit codes: 0 success (or the expected non-positivity confirmed), 1 a
verdict failed, 2 usage error, 3 a budget or brute-force bound was exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .harness import (
    CLASS_KINDS,
    BudgetExceeded,
    check_conjecture,
    counterexample_f_theta,
    numeric_log_concavity,
    verify_corollary_2_3,
    verify_theorem_1_1,
    verify_theorem_3_1,
)
from .partitions import PartitionError, format_partition, parse_partition
from .report import plot_count_table, plot_reports, render_reports, render_table
from .rsk import DEFAULT_BRUTE_BOUND, shape_class, tabulate, tabulate_by_formula
from .schur import DEFAULT_CACHE, CacheFormatError, LRCache, lr_product, parse_cache_lines
from .tableaux import DEFAULT_ORACLE_BOUND, BoundExceeded, enumerate_syt_count, hook_grid, syt_count, syt_count_frobenius

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CACHE_ENV = "SCHURPOS_CACHE_DIR"
CACHE_FILE = "lr-products.v1"

VERIFY_IDS = (
    "thm1_1",
    "thm1_1a",
    "thm1_1b",
    "cor2_3",
    "cor2_3a",
    "cor2_3b",
    "thm3_1",
    "thm3_1a",
    "thm3_1b",
    "conj_f",
    "conj_g",
    "conj_g_theta",
    "conj_i_theta_numeric",
    "conj_l_theta_numeric",
    "conj_i_numeric",
    "conj_l_numeric",
    "counterexample_f_theta",
)


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _budget(text: str) -> tuple[str, int]:
    kind, sep, deg = text.partition("=")
    kind = kind.replace("-", "_")
    if not sep or kind not in CLASS_KINDS + ("thm3_1",):
        raise argparse.ArgumentTypeError(f"budget must look like KIND=DEGREE with KIND in f,g,g_theta,f_theta,thm3_1; got {text!r}")
    return kind, _positive_int(deg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--workers", type=_positive_int, default=1, help="processes for product expansion")
    common.add_argument("--cache-dir", help=f"LR cache directory (default ${CACHE_ENV} or .lr-cache)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the LR cache file")
    common.add_argument("--budget", type=_budget, action="append", default=[], metavar="KIND=DEGREE")
    common.add_argument("--oracle-bound", type=_positive_int, default=DEFAULT_ORACLE_BOUND)
    common.add_argument("--brute-bound", type=_positive_int, default=DEFAULT_BRUTE_BOUND)

    parser = argparse.ArgumentParser(prog="schurpos", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("syt", parents=[common], help="count standard Young tableaux")
    p.add_argument("shape")
    p.add_argument("--frobenius", action="store_true", help="use the first-column hook form")
    p.add_argument("--hooks", action="store_true", help="print the hook-length grid")
    p.add_argument("--oracle", action="store_true", help="cross-check by backtracking enumeration")

    p = sub.add_parser("lr", parents=[common], help="Schur expansion of s_lambda * s_mu")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("table", parents=[common], help="counts by longest increasing subsequence")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--involutions", action="store_true")
    p.add_argument("--class", dest="shape_class", choices=("all", "theta"), default="all")
    p.add_argument("--oracle", action="store_true", help="recompute by brute force and compare")
    p.add_argument("--plot", metavar="PATH", help="write a figure of the table")

    p = sub.add_parser("verify", parents=[common], help="run a named verification")
    p.add_argument("statement", help="one of: " + ", ".join(i.replace("_", "-") for i in VERIFY_IDS))
    p.add_argument("--m", type=_positive_int, default=1)
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--figure", metavar="PATH", help="write a figure of the verdicts")

    p = sub.add_parser("cache", parents=[common], help="inspect or move the LR cache")
    p.add_argument("action", choices=("stats", "clear", "export", "import"))
    p.add_argument("path", nargs="?")
    return parser


# ---------------------------------------------------------------------------


def _cache_path(args) -> Path:
    root = args.cache_dir or os.environ.get(CACHE_ENV) or ".lr-cache"
    return Path(root) / CACHE_FILE


def _open_cache(args) -> LRCache:
    cache = DEFAULT_CACHE
    if not args.no_cache:
        path = _cache_path(args)
        if path.exists():
            try:
                cache.load(path)
            except CacheFormatError as exc:
                print(f"warning: ignoring corrupt cache {path}: {exc}", file=sys.stderr)
        cache.added = 0
    return cache


def _save_cache(args, cache: LRCache) -> None:
    if args.no_cache or not cache.added:
        return
    path = _cache_path(args)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.exists():
        # keep entries another process wrote meanwhile
        try:
            cache.load(path)
        except CacheFormatError:
            pass
    cache.dump(path)


def _write(text: str) -> None:
    sys.stdout.write(text)


def cmd_syt(args) -> int:
    lam = parse_partition(args.shape)
    value = syt_count_frobenius(lam) if args.frobenius else syt_count(lam)
    if args.oracle:
        brute = enumerate_syt_count(lam, bound=args.oracle_bound)
        if brute != value:
            print(f"mismatch: formula {value}, enumeration {brute}", file=sys.stderr)
            return EXIT_FAIL
    if args.format == "json":
        import json

        doc = {"shape": format_partition(lam), "count": str(value), "method": "frobenius" if args.frobenius else "hook"}
        if args.hooks:
            doc["hooks"] = hook_grid(lam).rows()
        _write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    if args.hooks:
        for row in hook_grid(lam).rows():
            _write(" ".join(f"{h:>3}" for h in row) + "\n")
    _write(f"{value}\n")
    return EXIT_OK


def cmd_lr(args) -> int:
    lam, mu = parse_partition(args.left), parse_partition(args.right)
    cache = _open_cache(args)
    vec = lr_product(lam, mu, cache)
    _save_cache(args, cache)
    if args.format == "json":
        import json

        _write(json.dumps({format_partition(nu): str(c) for nu, c in vec.items()}, indent=2) + "\n")
    elif args.format == "csv":
        _write("partition,coefficient\n" + "".join(f"\"{format_partition(nu)}\",{c}\n" for nu, c in vec.items()))
    else:
        _write(f"{vec!r}\n")
    return EXIT_OK


def cmd_table(args) -> int:
    kind = "involutions" if args.involutions else "permutations"
    cls = shape_class(args.shape_class)
    table = tabulate_by_formula(args.n, kind, cls)
    if args.oracle:
        brute = tabulate(args.n, kind, cls, bound=args.brute_bound)
        if brute.counts != table.counts:
            print(f"mismatch: formula {table.counts}, brute force {brute.counts}", file=sys.stderr)
            return EXIT_FAIL
    _write(render_table(table, args.format))
    if args.plot:
        plot_count_table(table, args.plot)
    return EXIT_OK


def _run_verify(args, cache: LRCache):
    sid = args.statement.replace("-", "_")
    if sid not in VERIFY_IDS:
        raise UsageError(f"unknown statement {args.statement!r}")
    budgets = dict(args.budget)
    n, m = args.n, args.m
    if n is None:
        if sid == "counterexample_f_theta":
            n = 10
        else:
            raise UsageError(f"{args.statement} needs --n")
    base = sid[:-1] if sid[-1] in "ab" and sid[:-1] in ("thm1_1", "cor2_3", "thm3_1") else sid
    if base == "thm1_1":
        reports = verify_theorem_1_1(m, n)
    elif base == "cor2_3":
        reports = verify_corollary_2_3(m, n)
    elif base == "thm3_1":
        reports = verify_theorem_3_1(m, n, budgets, cache)
    elif sid in ("conj_f", "conj_g", "conj_g_theta"):
        reports = [check_conjecture(sid[5:], n, budgets, cache, args.workers)]
    elif sid == "counterexample_f_theta":
        reports = [counterexample_f_theta(n, budgets, cache, args.workers)]
    else:
        kind = "involutions" if sid.startswith("conj_i") else "permutations"
        cls = shape_class("theta" if "theta" in sid else "all")
        reports = [numeric_log_concavity(n, kind, cls)]
    if base != sid:
        reports = [r for r in reports if r.statement == sid]
    return sid, reports


def cmd_verify(args) -> int:
    cache = _open_cache(args)
    sid, reports = _run_verify(args, cache)
    _save_cache(args, cache)
    _write(render_reports(reports, args.format))
    if args.figure:
        plot_reports(reports, args.figure)
    if sid == "counterexample_f_theta":
        # the finding is the non-positivity itself
        return EXIT_OK if not all(r.holds for r in reports) else EXIT_FAIL
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


def cmd_cache(args) -> int:
    path = _cache_path(args)
    if args.action in ("export", "import") and not args.path:
        raise UsageError(f"cache {args.action} needs a PATH")
    if args.action == "stats":
        entries, nbytes = 0, 0
        if path.exists():
            with open(path, encoding="ascii") as fh:
                entries = sum(1 for line in fh if line.strip())
            nbytes = path.stat().st_size
        if args.format == "json":
            import json

            _write(json.dumps({"path": str(path), "entries": entries, "bytes": nbytes}, indent=2) + "\n")
        else:
            _write(f"path: {path}\nentries: {entries}\nbytes: {nbytes}\n")
        return EXIT_OK
    if args.action == "clear":
        if path.exists():
            path.unlink()
        _write("cleared\n")
        return EXIT_OK
    cache = LRCache(max_degree=None)
    if path.exists():
        cache.load(path)
    if args.action == "export":
        cache.dump(args.path)
        _write(f"exported {len(cache)} entries\n")
        return EXIT_OK
    try:
        with open(args.path, encoding="ascii") as fh:
            entries = parse_cache_lines(fh)
    except CacheFormatError as exc:
        print(f"error: {args.path}: {exc}; nothing imported", file=sys.stderr)
        return EXIT_USAGE
    added = cache.merge(entries)
    path.parent.mkdir(parents=True, exist_ok=True)
    cache.dump(path)
    _write(f"imported {added} new entries ({len(cache)} total)\n")
    return EXIT_OK


COMMANDS = {"syt": cmd_syt, "lr": cmd_lr, "table": cmd_table, "verify": cmd_verify, "cache": cmd_cache}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PartitionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, BoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
