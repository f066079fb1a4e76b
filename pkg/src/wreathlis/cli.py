"""Command-line surface over the sampling, enumeration, and chain modules.

Every artifact starts with a metadata line (version, seed, resolved config)
and contains nothing time- or host-dependent, so a rerun with the same seed
and config is byte-identical; thread count never changes output. Commands
that back asymptotic claims refuse to run without an explicit seed.

Exit codes: 0 success, 2 usage error, 3 enumeration cap exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import ExitStack, contextmanager
from dataclasses import asdict

from .decomp import decompose
from .errors import CapExceeded, InvariantViolation
from .exact import (
    DEFAULT_GROUP_CAP,
    DEFAULT_SYM_DEGREE_CAP,
    WREATH_STATISTICS,
    enumerate_signed,
    enumerate_sym,
    enumerate_wreath,
)
from .lis import lis_fast
from .montecarlo import (
    CONJECTURE_CSV_COLUMNS,
    DEFAULT_U_GRID,
    SCAN_CSV_COLUMNS,
    TrialPlan,
    conjecture_scan,
    convergence_scan,
    iter_records,
    run_trials,
    tail_check,
)
from .output import build_metadata, write_csv, write_json_doc, write_jsonl
from .partitions import run_partition_sampler
from .perm import RandomSource, from_cycles
from .wreath import WreathElement, sample_wreath, to_word

TAIL_CSV_COLUMNS = ("u", "empirical_tail", "bound", "mc_error")
PARTITION_CSV_COLUMNS = ("partition", "count", "frequency")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _seed_value(text: str) -> int:
    value = int(text)
    if not 0 <= value <= 2**64 - 1:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def parse_grid(text: str) -> list[tuple[int, int]]:
    """Size grid: comma-separated cells, each "V" (meaning n=k=V) or "NxK".

    >>> parse_grid("16,64")
    [(16, 16), (64, 64)]
    >>> parse_grid("8x32, 16x16")
    [(8, 32), (16, 16)]
    """
    cells = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise ValueError("grid contains an empty cell")
        if "x" in token:
            left, _, right = token.partition("x")
            n, k = int(left), int(right)
        else:
            n = k = int(token)
        if n < 1 or k < 1:
            raise ValueError(f"grid cell {token!r} has a nonpositive size")
        cells.append((n, k))
    return cells


def parse_int_list(text: str) -> list[int]:
    values = [int(token.strip()) for token in text.split(",") if token.strip()]
    if not values:
        raise ValueError("expected a non-empty comma-separated list of integers")
    if any(v < 1 for v in values):
        raise ValueError("list entries must be positive")
    return values


def parse_u_grid(text: str) -> tuple[float, ...]:
    values = tuple(float(token.strip()) for token in text.split(",") if token.strip())
    if not values:
        raise ValueError("u-grid must be non-empty")
    if any(u < 0 for u in values):
        raise ValueError("u-grid values must be nonnegative")
    return values


@contextmanager
def _open_out(path: str | None):
    # newline="" keeps "\n" untranslated so reruns are byte-identical
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _fixture_element() -> WreathElement:
    # Three blocks of two: swap, hold, swap; blocks cycled 3 -> 1 -> 2 -> 3.
    return WreathElement(
        k=2,
        n=3,
        inner=((2, 1), (1, 2), (2, 1)),
        outer=from_cycles(3, [(3, 1, 2)]),
    )


def cmd_sample(args) -> int:
    if args.fixture:
        element = _fixture_element()
        seed = None
        config = {"command": "sample", "n": element.n, "k": element.k, "fixture": True}
    else:
        seed = args.seed
        config = {"command": "sample", "n": args.n, "k": args.k, "fixture": False}
        element = sample_wreath(args.n, args.k, RandomSource(seed, 0))
    word = to_word(element)
    witness = lis_fast(word)
    parts = decompose(element)
    lines = [
        "# " + json.dumps(build_metadata(seed, config), separators=(",", ":")),
        f"element n={element.n} k={element.k}",
    ]
    for i, gamma in enumerate(element.inner, start=1):
        lines.append(f"inner[{i}]: " + " ".join(map(str, gamma)))
    lines.append("outer: " + " ".join(map(str, element.outer)))
    lines.append("word: " + " ".join(map(str, word)))
    lines.append(f"L: {witness.length}")
    lines.append("witness_positions: " + " ".join(map(str, witness.indices)))
    lines.append("block_word: " + " ".join(map(str, parts.block_word)))
    lines.append(f"N: {parts.block_lis_length}")
    lines.append("chosen_blocks: " + " ".join(map(str, parts.chosen_blocks)))
    lines.append("per_block_lis: " + " ".join(map(str, parts.per_block_lis)))
    lines.append(f"W: {parts.lower_bound}")
    with _open_out(args.out) as out:
        out.write("\n".join(lines) + "\n")
    return 0


def cmd_exact(args) -> int:
    if args.wreath is not None:
        n, k = args.wreath
        cap = args.cap if args.cap is not None else DEFAULT_GROUP_CAP
        config = {"command": "exact", "mode": "wreath", "n": n, "k": k,
                  "statistic": args.statistic, "cap": cap}
        table = enumerate_wreath(n, k, statistic=args.statistic, cap=cap)
    elif args.signed is not None:
        cap = args.cap if args.cap is not None else DEFAULT_GROUP_CAP
        config = {"command": "exact", "mode": "signed", "n": args.signed, "cap": cap}
        table = enumerate_signed(args.signed, cap=cap)
    else:
        cap = args.cap if args.cap is not None else DEFAULT_SYM_DEGREE_CAP
        config = {"command": "exact", "mode": "sym", "m": args.sym, "cap": cap}
        table = enumerate_sym(args.sym, max_degree=cap)
    meta = build_metadata(None, config)
    with _open_out(args.out) as out:
        if args.format == "json":
            write_json_doc(out, meta, table.to_json_dict())
        else:
            write_csv(out, meta, ("value", "count"), zip(table.support, table.counts))
    return 0


def _write_trial_records(path: str, meta: dict, cells) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_jsonl(fh, meta, (rec for cell in cells for rec in iter_records(cell.result)))


def cmd_scan(args) -> int:
    grid = parse_grid(args.grid)
    config = {"command": "scan", "grid": [list(cell) for cell in grid], "trials": args.trials}
    meta = build_metadata(args.seed, config)
    cells = convergence_scan(grid, args.trials, args.seed, threads=args.threads)
    rows = [asdict(cell.row) for cell in cells]
    with _open_out(args.out) as out:
        if args.format == "json":
            write_json_doc(out, meta, {"rows": rows})
        else:
            write_csv(out, meta, SCAN_CSV_COLUMNS, (tuple(row.values()) for row in rows))
    if args.records:
        _write_trial_records(args.records, meta, cells)
    return 0


def cmd_tail(args) -> int:
    u_grid = args.u_grid if args.u_grid is not None else DEFAULT_U_GRID
    config = {"command": "tail", "k": args.k, "trials": args.trials, "u_grid": list(u_grid)}
    meta = build_metadata(args.seed, config)
    report = tail_check(args.k, args.trials, u_grid=u_grid, master_seed=args.seed)
    payload = {
        "k": report.k,
        "trials": report.trials,
        "threshold": report.threshold,
        "mean_estimate": report.mean_estimate,
        "variance_estimate": report.variance_estimate,
        "estimates_exact": report.estimates_exact,
        "u_grid": list(report.u_grid),
        "empirical_tail": list(report.empirical_tail),
        "bound": list(report.bound),
        "mc_error": list(report.mc_error),
    }
    with _open_out(args.out) as out:
        if args.format == "csv":
            rows = zip(report.u_grid, report.empirical_tail, report.bound, report.mc_error)
            write_csv(out, meta, TAIL_CSV_COLUMNS, rows)
        else:
            write_json_doc(out, meta, payload)
    return 0


def cmd_conjecture(args) -> int:
    n_grid = parse_int_list(args.grid)
    config = {"command": "conjecture", "n_grid": n_grid, "k": 2, "trials": args.trials}
    meta = build_metadata(args.seed, config)
    cells = conjecture_scan(n_grid, args.trials, args.seed, threads=args.threads)
    rows = [asdict(cell.row) for cell in cells]
    with _open_out(args.out) as out:
        if args.format == "json":
            write_json_doc(out, meta, {"rows": rows})
        else:
            write_csv(out, meta, CONJECTURE_CSV_COLUMNS, (tuple(row.values()) for row in rows))
    if args.records:
        _write_trial_records(args.records, meta, cells)
    return 0


def cmd_partitions(args) -> int:
    config = {"command": "partitions", "n": args.n, "steps": args.steps, "burn_in": args.burn_in}
    meta = build_metadata(args.seed, config)
    rng = RandomSource(args.seed, 0)
    with ExitStack() as stack:
        sink = None
        if args.records:
            records_fh = stack.enter_context(
                open(args.records, "w", encoding="utf-8", newline="")
            )
            records_fh.write(json.dumps({"meta": meta}, separators=(",", ":")) + "\n")

            def sink(parts):
                records_fh.write(json.dumps(list(parts), separators=(",", ":")) + "\n")

        freqs = run_partition_sampler(args.n, args.steps, args.burn_in, rng, sink=sink)
    rows = (
        (json.dumps(list(parts), separators=(",", ":")), count, frequency)
        for parts, count, frequency in freqs.rows()
    )
    with _open_out(args.out) as out:
        if args.format == "json":
            payload = {
                "rows": [
                    {"partition": list(parts), "count": count, "frequency": frequency}
                    for parts, count, frequency in freqs.rows()
                ]
            }
            write_json_doc(out, meta, payload)
        else:
            write_csv(out, meta, PARTITION_CSV_COLUMNS, rows)
    return 0


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default=default_format,
                        help=f"output format (default {default_format})")
    parser.add_argument("--out", default="-", metavar="PATH",
                        help="output path, - for stdout (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreathlis",
        description="Increasing-subsequence statistics for wreath-product "
                    "permutation groups: sampling, exact enumeration, tail "
                    "checks, and a partition-sampling Markov chain.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + _package_version())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "sample",
        help="draw one group element and print its word, LIS, and block decomposition",
    )
    p.add_argument("--n", type=_positive_int, help="number of blocks")
    p.add_argument("--k", type=_positive_int, help="block size")
    p.add_argument("--seed", type=_seed_value, help="master seed (required unless --fixture)")
    p.add_argument("--fixture", action="store_true",
                   help="print the pinned reference element instead of sampling")
    p.add_argument("--out", default="-", metavar="PATH",
                   help="output path, - for stdout (default)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "exact",
        help="exact statistic distribution over a full group",
        description="Exact distribution tables. CSV columns: value,count. "
                    "JSON carries support, counts, total, and exact rational "
                    "mean/var as {num, den} pairs.",
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--wreath", nargs=2, type=_positive_int, metavar=("N", "K"),
                       help="full wreath group with N blocks of size K")
    group.add_argument("--signed", type=_positive_int, metavar="N",
                       help="centrally symmetric permutations of {-N..-1,1..N}")
    group.add_argument("--sym", type=_nonnegative_int, metavar="M",
                       help="symmetric group of degree M")
    p.add_argument("--statistic", choices=WREATH_STATISTICS, default="L",
                   help="wreath statistic: word LIS (L), block lower bound (W), "
                        "or block-word LIS (N); --wreath only (default L)")
    p.add_argument("--cap", type=_positive_int, default=None,
                   help="enumeration cap: maximum group order for --wreath/--signed, "
                        "maximum degree for --sym")
    _add_output_flags(p, default_format="json")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser(
        "scan",
        help="scan the scaled LIS ratio over a grid of sizes",
        description="Per-cell ratio statistics of LIS over 4*sqrt(n*k). "
                    "CSV columns: " + ",".join(SCAN_CSV_COLUMNS) + ". "
                    "Cells run on independent derived seeds and sort by n*k.",
    )
    p.add_argument("--grid", required=True,
                   help='comma-separated cells, each "V" (n=k=V) or "NxK"')
    p.add_argument("--trials", type=_positive_int, required=True, help="trials per cell")
    p.add_argument("--seed", type=_seed_value, required=True, help="master seed")
    p.add_argument("--threads", type=_positive_int, default=1,
                   help="worker threads; never changes output (default 1)")
    p.add_argument("--records", metavar="PATH",
                   help="also write per-trial JSONL records to PATH")
    _add_output_flags(p, default_format="csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser(
        "tail",
        help="empirical LIS tail probabilities against the analytic bound",
        description="Tail report for LIS of a uniform permutation. "
                    "CSV columns: " + ",".join(TAIL_CSV_COLUMNS) + ". "
                    "JSON adds the threshold and the moment estimates.",
    )
    p.add_argument("--k", type=_positive_int, required=True, help="permutation size, k >= 2")
    p.add_argument("--trials", type=_positive_int, required=True, help="Monte Carlo trials")
    p.add_argument("--seed", type=_seed_value, required=True, help="master seed")
    p.add_argument("--u-grid", type=parse_u_grid, default=None, metavar="U0,U1,...",
                   help="nonnegative tail offsets (default 0..10)")
    _add_output_flags(p, default_format="json")
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser(
        "conjecture",
        help="scaling scan at block size 2: L and W against sqrt(n)",
        description="Evidence scan for the conjectured sqrt(n) scaling at "
                    "block size 2. CSV columns: " + ",".join(CONJECTURE_CSV_COLUMNS) + ".",
    )
    p.add_argument("--grid", required=True, metavar="N0,N1,...",
                   help="comma-separated block counts")
    p.add_argument("--trials", type=_positive_int, required=True, help="trials per cell")
    p.add_argument("--seed", type=_seed_value, required=True, help="master seed")
    p.add_argument("--threads", type=_positive_int, default=1,
                   help="worker threads; never changes output (default 1)")
    p.add_argument("--records", metavar="PATH",
                   help="also write per-trial JSONL records to PATH")
    _add_output_flags(p, default_format="csv")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser(
        "partitions",
        help="sample partitions via the centralizer walk",
        description="Centralizer-walk partition sampler. CSV columns: "
                    + ",".join(PARTITION_CSV_COLUMNS) + " (partitions rendered "
                    "as JSON arrays of descending parts). --records streams one "
                    "JSON array per post-burn-in step.",
    )
    p.add_argument("--n", type=_positive_int, required=True, help="degree to partition")
    p.add_argument("--steps", type=_positive_int, required=True, help="total chain steps")
    p.add_argument("--burn-in", type=_nonnegative_int, default=1000,
                   help="steps discarded before reporting (default 1000)")
    p.add_argument("--seed", type=_seed_value, required=True, help="master seed")
    p.add_argument("--records", metavar="PATH",
                   help="also stream reported partitions as JSONL to PATH")
    _add_output_flags(p, default_format="csv")
    p.set_defaults(func=cmd_partitions)

    return parser


def _package_version() -> str:
    from . import __version__

    return __version__


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sample":
        if args.fixture:
            if args.n is not None or args.k is not None or args.seed is not None:
                parser.error("--fixture does not take --n/--k/--seed")
        elif args.n is None or args.k is None or args.seed is None:
            parser.error("sample requires --n, --k, and --seed (or --fixture)")
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}; raise --cap to allow larger enumerations", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
