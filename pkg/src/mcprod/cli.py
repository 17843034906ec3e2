"""Command line client over the service handlers.

Commands:
    mcprod validate FILE
    mcprod cohomology FILE --degree K
    mcprod massey FILE EXPR [EXPR ...]
    mcprod mc-product FILE --data DGLAFILE --system SYSFILE
    mcprod annihilate FILE --cocycle EXPR --max-degree N
    mcprod descend FILE --euler EXPR --x-degree N --data DGLAFILE
                        --system SYSFILE --class EXPR [--x-name NAME]
    mcprod selftest

--json prints the machine-readable report.  Exit status: 0 success,
1 mathematical failure (obstruction, invalid structure, class survives),
2 input error.  MCPROD_MAX_ITER overrides the tower adjunction cap.
"""

from __future__ import annotations

import argparse
import sys

from mcprod import service
from mcprod.io import Report


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcprod",
        description="Exact Maurer-Cartan higher products over truncated free CDGAs.",
    )
    parser.add_argument("--json", action="store_true", help="emit the machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model file is a valid CDGA")
    p.add_argument("model")

    p = sub.add_parser("cohomology", help="cohomology basis in one degree")
    p.add_argument("model")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("massey", help="Massey product of cocycle expressions")
    p.add_argument("model")
    p.add_argument("expressions", nargs="+", metavar="EXPR")

    p = sub.add_parser("mc-product", help="MC higher product of a defining system")
    p.add_argument("model")
    p.add_argument("--data", required=True, help="DGLA extension data file")
    p.add_argument("--system", required=True, help="defining system file")

    p = sub.add_parser("annihilate", help="annihilation-ideal membership test")
    p.add_argument("model")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("descend", help="descend a system along one odd variable")
    p.add_argument("model")
    p.add_argument("--euler", required=True, help="Euler class expression over the base")
    p.add_argument("--x-degree", type=int, required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--system", required=True, help="system over the extended algebra")
    p.add_argument("--class", dest="target_class", required=True,
                   help="odd cocycle expression over the base")
    p.add_argument("--x-name", default="x")

    sub.add_parser("selftest", help="run the bundled acceptance suite")
    return parser


def dispatch(args: argparse.Namespace) -> Report:
    try:
        if args.command == "validate":
            return service.run_validate(_read(args.model))
        if args.command == "cohomology":
            return service.run_cohomology(_read(args.model), args.degree)
        if args.command == "massey":
            return service.run_massey(_read(args.model), args.expressions)
        if args.command == "mc-product":
            return service.run_mc_product(
                _read(args.model), _read(args.data), _read(args.system)
            )
        if args.command == "annihilate":
            return service.run_annihilate(
                _read(args.model), args.cocycle, args.max_degree
            )
        if args.command == "descend":
            return service.run_descend(
                _read(args.model),
                args.euler,
                args.x_degree,
                _read(args.data),
                _read(args.system),
                args.target_class,
                args.x_name,
            )
        if args.command == "selftest":
            return service.run_selftest()
    except OSError as exc:
        return Report(command=args.command, ok=False, exit_code=2, error=str(exc))
    raise SystemExit(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = dispatch(args)
    echo = argv if argv is not None else sys.argv[1:]
    report.results = {"command_echo": "mcprod " + " ".join(echo), **report.results}
    print(report.to_json() if args.json else report.human())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
