"""Command line: ``catk <suite> [options]``.

Exit status: 0 when every trial passes, 1 when any fails, 2 for usage
errors, 3 for a numerical-domain or accuracy abort, 4 for IO errors.
"""

import argparse
import sys

from .errors import AccuracyError, InvalidInputError, NumericalDomainError
from .io import load_json
from .suites import SUITES, SuiteConfig, emit, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"catk: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _grid(text):
    try:
        m, n = text.lower().split("x")
        return [int(m), int(n)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN, got {text!r}") from None


def build_parser():
    p = _Parser(prog="catk", description="Run a seeded verification suite and emit a report.")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES))
    p.add_argument("--k", type=_floats, help="comma-separated curvature values")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol-test", type=float, dest="tol_test")
    p.add_argument("--tol-model", type=float, dest="tol_model")
    p.add_argument("--tol-quad", type=float, dest="tol_quad")
    p.add_argument("--step", type=float)
    p.add_argument("--grid", type=_grid, help="MxN quadrature or evaluation grid")
    p.add_argument("--k-ref", type=float, dest="k_ref")
    p.add_argument("--eps", type=_floats, dest="eps_list", help="parallel offsets")
    p.add_argument("--threads", type=int)
    p.add_argument("--config", help="JSON suite config; command-line options override it")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def make_config(args):
    base = {}
    if args.config:
        base = load_json(args.config)
        if base.get("suite", args.suite) != args.suite:
            raise InvalidInputError(f"config is for suite {base['suite']!r}, not {args.suite!r}")
    base["suite"] = args.suite
    over = {"k_list": args.k, "trials": args.trials, "seed": args.seed, "tol_test": args.tol_test,
            "tol_model": args.tol_model, "tol_quad": args.tol_quad, "step": args.step, "grid": args.grid,
            "k_ref": args.k_ref, "eps_list": args.eps_list, "threads": args.threads}
    base.update({k: v for k, v in over.items() if v is not None})
    return SuiteConfig.from_dict(base).resolved()


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.suite not in SUITES:
        print(f"catk: error: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = make_config(args)
    except OSError as exc:
        print(f"catk: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvalidInputError, TypeError, ValueError) as exc:
        print(f"catk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run_suite(cfg)
    except (NumericalDomainError, AccuracyError) as exc:
        print(f"catk: numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    try:
        text = emit(report, args.format, args.out)
    except OSError as exc:
        print(f"catk: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.out is None:
        sys.stdout.write(text)
    s = report.summary()
    print(f"{cfg.suite}: {s['passed']}/{s['rows']} passed, worst margin {s['worst_margin']}, "
          f"{report.runtime:.2f} s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
