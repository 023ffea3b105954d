"""Command-line interface.

Subcommands: ``mcc``, ``decompose``, ``select``, ``surface`` and ``verify``.
Exit status is 0 on success, 1 on invalid input and 2 when ``verify``
finds an identity outside tolerance.
"""

import argparse
import contextlib
import sys

from . import io as mio
from .decomposition import fit_least_squares, select_subset
from .exceptions import BudgetExceededError, MucorrError, NumericalError
from .geometry import contour_lines, mcc_surface, profile_line
from .ipd import muc_ipd
from .measures import muc_det
from .minors import muc_minors
from .verify import fuzz_identities

ROUTES = {"det": muc_det, "minors": muc_minors, "ipd": muc_ipd}
EXIT_OK, EXIT_INVALID, EXIT_IDENTITY = 0, 1, 2


def _names(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of names")
    return names


def _floats(count=None):
    def parse(text):
        try:
            values = [float(t) for t in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None
        if count is not None and len(values) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers")
        return values

    return parse


def _positive(text):
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def cmd_mcc(args):
    data = mio.load_csv(args.input, args.cols, args.missing)
    series = data.select(args.cols)
    routes = list(ROUTES) if args.route == "all" else [args.route]
    reports = {name: ROUTES[name](series) for name in routes}

    primary = reports[routes[0]]
    payload = {**primary.as_dict(), "columns": args.cols, "dropped_rows": data.dropped_rows}
    if args.route == "all":
        payload["routes"] = {k: v.as_dict() for k, v in reports.items()}
        values = [r.muc_squared for r in reports.values()]
        payload["max_abs_diff"] = max(values) - min(values)
    else:
        other = "minors" if args.route != "minors" else "det"
        try:
            check = ROUTES[other](series)
        except BudgetExceededError as exc:
            payload["cross_check"] = {other: None, "skipped": str(exc)}
        else:
            payload["cross_check"] = {
                other: check.muc_squared,
                "max_abs_diff": abs(check.muc_squared - primary.muc_squared),
            }

    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(mio.to_json(payload) + "\n")
        else:
            mio.write_csv(fh, ("route", "mcc", "muc", "muc_squared", "m", "n"),
                          ([r.route.value, r.mcc, r.muc, r.muc_squared, r.m, r.n] for r in reports.values()))
    return EXIT_OK


def cmd_decompose(args):
    data = mio.load_csv(args.input, args.predictors + [args.target], args.missing)
    result = fit_least_squares(data.select(args.predictors), data[args.target])
    payload = {"target": args.target, "predictors": args.predictors, **result.as_dict()}
    with _output(args.out) as fh:
        fh.write(mio.to_json(payload) + "\n")
    return EXIT_OK


def cmd_select(args):
    data = mio.load_csv(args.input, args.pool + [args.target], args.missing)
    strategy = "greedy_forward" if args.strategy == "greedy" else args.strategy
    sel = select_subset(data.select(args.pool), data[args.target], args.m, strategy=strategy)
    payload = {"target": args.target, "chosen_names": [args.pool[i] for i in sel.chosen], **sel.as_dict()}
    with _output(args.out) as fh:
        fh.write(mio.to_json(payload) + "\n")
    return EXIT_OK


def cmd_surface(args):
    grid = mcc_surface(args.alpha, args.step)
    with _output(args.out) as fh:
        mio.write_grid(fh, grid)
    if args.cut is not None:
        prof = profile_line(grid, args.cut)
        with _output(args.profile_out) as fh:
            mio.write_csv(fh, ("t", "beta", "gamma", "mcc", "feasible"), zip(*prof))
    if args.levels is not None:
        sets = contour_lines(grid, args.levels)
        rows = (
            (cs.level, k, beta, gamma)
            for cs in sets
            for k, line in enumerate(cs.polylines)
            for beta, gamma in line
        )
        with _output(args.contour_out) as fh:
            mio.write_csv(fh, ("level", "polyline", "beta", "gamma"), rows)
    return EXIT_OK


def cmd_verify(args):
    try:
        report = fuzz_identities(m=args.m, trials=args.trials, seed=args.seed, n=args.n, tol=args.tol)
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    with _output(args.out) as fh:
        fh.write("\n".join(report.lines()) + "\n")
    return EXIT_OK if report.ok else EXIT_IDENTITY


def build_parser():
    parser = argparse.ArgumentParser(prog="mucorr", description="Multivariate correlation (MCC/MUC) toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def data_args(p):
        p.add_argument("--input", required=True, help="CSV file with a header row ('-' for stdin)")
        p.add_argument("--missing", choices=mio.MISSING_POLICIES, default="error",
                       help="what to do with blank or non-numeric cells")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("mcc", help="MCC/MUC of selected columns")
    data_args(p)
    p.add_argument("--cols", type=_names, required=True)
    p.add_argument("--route", choices=[*ROUTES, "all"], default="det")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_mcc)

    p = sub.add_parser("decompose", help="least-squares decomposition of a target column")
    data_args(p)
    p.add_argument("--target", required=True)
    p.add_argument("--predictors", type=_names, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("select", help="choose predictors minimizing the MUC ratio")
    data_args(p)
    p.add_argument("--target", required=True)
    p.add_argument("--pool", type=_names, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--strategy", choices=("exhaustive", "greedy", "greedy_forward"), default="exhaustive")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("surface", help="three-variable MCC grid over (beta, gamma)")
    p.add_argument("--alpha", type=float, required=True, help="fixed angle in degrees")
    p.add_argument("--step", type=_positive, default=1.0, help="grid step in degrees")
    p.add_argument("--out", required=True, help="grid CSV path ('-' for stdout)")
    p.add_argument("--cut", type=_floats(4), help="profile cut beta1,gamma1,beta2,gamma2")
    p.add_argument("--profile-out", help="profile CSV path (default stdout)")
    p.add_argument("--levels", type=_floats(), help="contour levels L1,L2,...")
    p.add_argument("--contour-out", help="contour CSV path (default stdout)")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("verify", help="randomized check of the MUC identities")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", type=int, default=None, help="dimension (default m + 3)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive, default=1e-8)
    p.add_argument("--out", help="report file (default stdout)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MucorrError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
