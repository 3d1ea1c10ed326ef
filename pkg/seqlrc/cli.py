"""Command line entry point: ``seqlrc <command> ...``.

Results go to stdout, diagnostics to stderr. Exit status: 0 success or
verified, 1 verified false, 2 usage or domain error, 3 resource limit,
4 completion retries exhausted, 5 internal invariant violated.
"""
import argparse
import logging
import sys

from seqlrc import bounds, completion, config, locality, turan
from seqlrc.algebra import format_matrix, read_matrix, write_matrix
from seqlrc.code import GHW_STRATEGIES, LinearCode, ghw_profile, min_distance, wei_duality_check
from seqlrc.errors import (
    DomainError,
    InvariantViolation,
    ResourceLimitError,
    RetryExhaustedError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_RETRY = 4
EXIT_INVARIANT = 5

MAX_FAILING_PAIRS = 100


def _yes_no(flag):
    return "yes" if flag else "no"


def _status(flag):
    return EXIT_OK if flag else EXIT_FALSE


def _load_code(path, keep_rows=False):
    M = read_matrix(path)
    return LinearCode(M) if keep_rows else LinearCode.from_generator(M)


def _limits(args):
    return config.Limits.from_env().replace(max_ghw_length=args.max_ghw_length, max_subsets=args.max_subsets)


def cmd_bound(args, limits):
    if args.kind == "classic":
        for report in bounds.classic_bounds(args.n, args.k, args.r, args.delta):
            print(f"{report.kind}: d_min <= {report.value}")
        return EXIT_OK
    bound = bounds.seq_dmin_bound if args.kind == "seq" else bounds.single_dmin_bound
    print(bounds.format_report(bound(args.n, args.k, args.r)))
    return EXIT_OK


def cmd_table(args, limits):
    k_range = None
    if args.k_min is not None or args.k_max is not None:
        k_min = 1 if args.k_min is None else args.k_min
        k_max = args.n - bounds.single_parity_count(args.n, args.r) if args.k_max is None else args.k_max
        k_range = range(k_min, k_max + 1)
    rows = bounds.compare_table(args.n, args.r, k_range)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as f:
            bounds.write_table(rows, f)
    else:
        bounds.write_table(rows, sys.stdout)
    return EXIT_OK


def cmd_construct(args, limits):
    design = turan.turan_design(args.r, args.beta)
    B0 = turan.turan_b0(design)
    if args.out:
        write_matrix(B0.generator, args.out)
    else:
        sys.stdout.write(format_matrix(B0.generator))
    if args.print_supports:
        # stdout holds the matrix unless it went to --out
        stream = sys.stdout if args.out else sys.stderr
        for S in design.supports:
            print(" ".join(map(str, S)), file=stream)
    return EXIT_OK


def cmd_complete(args, limits):
    request = completion.CompletionRequest(
        B0=_load_code(args.b0), k=args.k, q=args.q, seed=args.seed, max_tries=args.max_tries)
    result = completion.complete(request, limits)
    write_matrix(result.code.generator, args.out)
    print(f"attempts: {result.attempts}")
    print(f"cores checked: {result.cores_checked} ({'exhaustive' if result.exhaustive else 'sampled'})")
    print(f"field threshold: {result.field_threshold}")
    return EXIT_OK


def cmd_verify_ghw(args, limits):
    profile = ghw_profile(_load_code(args.code), args.strategy, limits)
    print("weights: " + " ".join(map(str, profile.weights)))
    print("gaps: " + " ".join(map(str, profile.gaps)))
    return EXIT_OK


def cmd_verify_locality(args, limits):
    C = _load_code(args.code)
    cover = locality.cover_map(C, args.r, limits)
    if args.single:
        ok = cover.has_all_symbol_locality()
        print(f"all-symbol locality: {_yes_no(ok)}")
    else:
        ok = cover.is_locally_2_reconstructible()
        print(f"reconstructible: {_yes_no(ok)}")
    print("cover sizes:")
    for size, count in cover.histogram().items():
        print(f"  |A_i|={size}: {count}")
    if args.single:
        uncovered = [i for i in range(1, C.n + 1) if not cover.covering(i)]
        if uncovered:
            print("uncovered: " + " ".join(map(str, uncovered)))
        return _status(ok)
    failing = cover.failing_pairs()
    if failing:
        print(f"failing pairs: {len(failing)}")
        for i, j in failing[:MAX_FAILING_PAIRS]:
            print(f"  {i} {j}")
        if len(failing) > MAX_FAILING_PAIRS:
            print(f"  ... {len(failing) - MAX_FAILING_PAIRS} more")
    return _status(ok)


def cmd_verify_duality(args, limits):
    ok = wei_duality_check(_load_code(args.code), limits=limits)
    print(f"wei duality: {_yes_no(ok)}")
    return _status(ok)


def _theorem_inputs(args):
    C = _load_code(args.code)
    B0 = _load_code(args.b0)
    k = C.k if args.k is None else args.k
    in_dual = completion.verify_b0_in_dual(C, B0)
    print(f"b0 in dual: {_yes_no(in_dual)}")
    return C, B0, k, in_dual


def cmd_verify_theorem3(args, limits):
    C, B0, k, in_dual = _theorem_inputs(args)
    if not in_dual:
        return EXIT_FALSE
    actual = min_distance(C, limits=limits)
    expected = completion.expected_min_distance(B0.lift(C.field), k, limits)
    print(f"d_min: {actual}")
    print(f"n + 1 - g_k: {expected}")
    print(f"theorem3: {_yes_no(actual == expected)}")
    return _status(actual == expected)


def cmd_verify_theorem4(args, limits):
    C, B0, k, in_dual = _theorem_inputs(args)
    if not in_dual:
        return EXIT_FALSE
    actual = ghw_profile(C.dual, limits=limits)
    expected = completion.theorem4_profile(B0.lift(C.field), k, limits)
    print("dual weights: " + " ".join(map(str, actual.weights)))
    print("predicted: " + " ".join(map(str, expected.weights)))
    print(f"theorem4: {_yes_no(actual == expected)}")
    return _status(actual == expected)


def cmd_verify_turan(args, limits):
    report = turan.optimality_report(_load_code(args.code, keep_rows=True), args.r, limits)
    for line in report.lines():
        print(line)
    return _status(report.optimal)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="seqlrc",
        description="Bounds, constructions and checks for locally 2-reconstructible codes.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (-vv for debug output)")
    parser.add_argument("--max-ghw-length", type=int, default=None,
                        help="largest block length for GHW enumeration")
    parser.add_argument("--max-subsets", type=int, default=None,
                        help="largest number of subsets scanned by one enumeration")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    p = commands.add_parser("bound", help="minimum distance bounds")
    p.add_argument("kind", choices=("seq", "single", "classic"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=int, default=None, help="erasures per local group (classic only)")
    p.set_defaults(handler=cmd_bound)

    p = commands.add_parser("table", help="CSV comparison of the bounds over k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k-min", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_table)

    p = commands.add_parser("construct", help="build a local code")
    p.add_argument("family", choices=("turan",))
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--print-supports", action="store_true",
                   help="list the local parity supports (on stderr when the matrix goes to stdout)")
    p.set_defaults(handler=cmd_construct)

    p = commands.add_parser("complete", help="complete a local code to a full code")
    p.add_argument("--b0", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, default=config.DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-tries", type=int, default=config.DEFAULT_MAX_TRIES)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_complete)

    verify = commands.add_parser("verify", help="check a property of a code file")
    checks = verify.add_subparsers(dest="check", metavar="check")
    checks.required = True

    p = checks.add_parser("ghw")
    p.add_argument("--code", required=True)
    p.add_argument("--strategy", choices=GHW_STRATEGIES, default="auto")
    p.set_defaults(handler=cmd_verify_ghw)

    p = checks.add_parser("locality")
    p.add_argument("--code", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--single", action="store_true", help="check single-erasure locality instead")
    p.set_defaults(handler=cmd_verify_locality)

    p = checks.add_parser("duality")
    p.add_argument("--code", required=True)
    p.set_defaults(handler=cmd_verify_duality)

    for name, handler in (("theorem3", cmd_verify_theorem3), ("theorem4", cmd_verify_theorem4)):
        p = checks.add_parser(name)
        p.add_argument("--code", required=True)
        p.add_argument("--b0", required=True)
        p.add_argument("--k", type=int, default=None)
        p.set_defaults(handler=handler)

    p = checks.add_parser("turan-optimality")
    p.add_argument("--code", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=cmd_verify_turan)
    return parser


def _configure_logging(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        return args.handler(args, _limits(args))
    except DomainError as exc:
        code, message = EXIT_USAGE, str(exc)
    except OSError as exc:
        code, message = EXIT_USAGE, str(exc)
    except ResourceLimitError as exc:
        code, message = EXIT_RESOURCE, str(exc)
    except RetryExhaustedError as exc:
        code, message = EXIT_RETRY, str(exc)
    except InvariantViolation as exc:
        code, message = EXIT_INVARIANT, f"internal error: {exc}"
    print(f"seqlrc: error: {message}", file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
