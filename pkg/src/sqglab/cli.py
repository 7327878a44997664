"""Command-line interface.

Exit codes: 0 success, 1 oracle failure, 2 blow-up, 3 modulus breach under
--strict, 10 file not found, 11 malformed snapshot, 12 config error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import BlowUpError, ConfigError, SnapshotFormatError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BLOWUP = 2
EXIT_BREACH = 3
EXIT_NOT_FOUND = 10
EXIT_BAD_SNAPSHOT = 11
EXIT_BAD_CONFIG = 12


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqglab",
        description="Pseudo-spectral quasi-geostrophic solver and diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a configured simulation")
    run.add_argument("--config", required=True, help="flat key=value config file")
    run.add_argument("--restart", default=None, help="snapshot to resume from")
    run.add_argument("--strict", action="store_true",
                     help="exit 3 if the modulus monitor reports a breach")
    run.add_argument("--output", default=None,
                     help="override output directory (also SQG_OUTPUT_DIR)")

    oracle = sub.add_parser("oracle", help="run validation oracles")
    oracle.add_argument("--suite", required=True,
                        choices=["all", "linear", "single-mode", "scaling",
                                 "convolution"])
    oracle.add_argument("--output", default="oracle_report.csv")

    check = sub.add_parser("modulus-check", help="one-shot breach report")
    check.add_argument("--field", required=True, help="snapshot file")
    check.add_argument("--delta3", type=float, required=True)
    check.add_argument("--r-max", type=float, default=10.0)
    check.add_argument("--table-size", type=int, default=256)

    analyze = sub.add_parser("analyze", help="fit or bound a norms.csv column")
    analyze.add_argument("--norms", required=True)
    analyze.add_argument("--column", required=True)
    analyze.add_argument("--window", required=True, metavar="A:B")
    analyze.add_argument("--weight", type=float, default=None)
    return parser


def _cmd_run(args) -> int:
    from .config import load_config
    from .driver import run_simulation

    config = load_config(args.config)
    result = run_simulation(config, restart=args.restart,
                            output_override=args.output)
    final = result.state
    print(f"completed t = {final.t:.6g} after {final.step_count} steps; "
          f"norms -> {result.norms_path}")
    if result.breaches:
        worst = max(b.worst_ratio for b in result.breaches)
        print(f"modulus breached at {len(result.breaches)} sample(s), "
              f"worst ratio {worst:.6g}")
        if args.strict:
            return EXIT_BREACH
    return EXIT_OK


def _cmd_oracle(args) -> int:
    from .driver import run_oracle_suite
    from .oracles import ORACLE_CSV_HEADER

    reports = run_oracle_suite(args.suite)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(ORACLE_CSV_HEADER + "\n")
        for report in reports:
            fh.write(report.csv_row() + "\n")
    for report in reports:
        status = "pass" if report.passed else "FAIL"
        print(f"{status} {report.name}: rel {report.max_rel_error:.3e} "
              f"(tol {report.tolerance:.0e})")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


def _cmd_modulus_check(args) -> int:
    from .modulus import build_knv_modulus, check_modulus, default_offsets
    from .snapshot import read_snapshot

    snap = read_snapshot(args.field)
    mod = build_knv_modulus(args.delta3, args.r_max, table_size=args.table_size)
    offsets = default_offsets(snap.field.grid, args.r_max)
    report = check_modulus(snap.field, mod, offsets, t=snap.t)
    print("breached,worst_ratio,worst_offset_d1,worst_offset_d2,time")
    print(f"{'true' if report.breached else 'false'},{report.worst_ratio:.17g},"
          f"{report.worst_offset[0]},{report.worst_offset[1]},{report.time:.17g}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    from .diagnostics import NormSeries, check_boundedness, fit_decay_exponent

    series = NormSeries.read_csv(args.norms)
    try:
        a, b = args.window.split(":")
        window = (float(a), float(b))
    except ValueError:
        raise ConfigError(f"window must be A:B, got {args.window!r}") from None
    if args.weight is None:
        fit = fit_decay_exponent(series, args.column, window)
        print("column,window_a,window_b,alpha,amplitude,residual_rms,n_samples")
        print(f"{args.column},{window[0]:.17g},{window[1]:.17g},"
              f"{fit.alpha:.17g},{fit.amplitude:.17g},{fit.residual_rms:.17g},"
              f"{fit.n_samples}")
    else:
        res = check_boundedness(series, args.weight, args.column, window)
        print("column,weight,window_a,window_b,sup,stabilized")
        print(f"{args.column},{args.weight:.17g},{window[0]:.17g},"
              f"{window[1]:.17g},{res.sup:.17g},"
              f"{'true' if res.stabilized else 'false'}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "oracle": _cmd_oracle,
        "modulus-check": _cmd_modulus_check,
        "analyze": _cmd_analyze,
    }
    try:
        return handlers[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except SnapshotFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SNAPSHOT
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except BlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP


if __name__ == "__main__":
    sys.exit(main())
