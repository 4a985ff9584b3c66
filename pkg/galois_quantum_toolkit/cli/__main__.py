import argparse
import sys

from .commands import CommandRequest, EXIT_USAGE, actions, execute, verbs

PARAMETER_FLAGS: dict[str, type] = {
    "p": int,
    "m": int,
    "q": int,
    "odd_q": int,
    "n": int,
    "g": str,
    "dim": int,
    "a": int,
    "b": int,
    "h": int,
    "k": int,
    "beta": float,
    "qmax": int,
    "mode": str,
    "claimed_d": int,
}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    for name, kind in PARAMETER_FLAGS.items():
        shared.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind)
    shared.add_argument("--format", choices=["text", "json", "csv"], default="text")
    shared.add_argument("--tol", type=float, default=None)
    shared.add_argument("--threads", type=int, default=None)
    shared.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="galois-toolkit",
        description="Finite-field arithmetic, character sums, MUBs, phase operators, "
        "cyclic codes and projective geometries.",
    )
    subparsers = parser.add_subparsers(dest="verb", required=True)
    for verb in verbs():
        sub = subparsers.add_parser(verb, parents=[shared])
        sub.add_argument("action", choices=actions(verb))
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    parameters = {
        name: getattr(args, name)
        for name in PARAMETER_FLAGS
        if getattr(args, name) is not None
    }
    request = CommandRequest(
        verb=args.verb,
        action=args.action,
        parameters=parameters,
        output=args.format,
        seed=args.seed,
        threads=args.threads,
    )
    if args.tol is not None:
        request.tolerance = args.tol

    result = execute(request)
    stream = sys.stdout if result.exit_code != EXIT_USAGE else sys.stderr
    stream.write(result.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
