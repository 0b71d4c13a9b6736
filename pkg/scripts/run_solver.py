#!/usr/bin/env python3
"""
Soft Constraint Solver - CLI Runner

Usage:
    python scripts/run_solver.py propagate data/instances/example2_tight.txt
    python scripts/run_solver.py solve data/instances/example2.txt
    python scripts/run_solver.py check data/instances/example3.txt --measure var
"""

import argparse
import logging
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import settings
from src.cli import COMMANDS


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Soft global constraints: propagation, optimization and oracle audit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
            Examples:
            # Filtered domains and cost bounds
            python scripts/run_solver.py propagate data/instances/example2_tight.txt

            # Minimize the objective with a tighter cost cap
            python scripts/run_solver.py solve data/instances/example2.txt --zmax 2

            # Compare propagators with brute force under edit distance
            python scripts/run_solver.py check data/instances/stretch.txt \\
                --measure edit --edit-weights 2,1,1
        """,
    )

    parser.add_argument("command", choices=sorted(COMMANDS), help="What to run")
    parser.add_argument("instance", help="Path to the instance file")
    parser.add_argument(
        "--measure",
        choices=["var", "val", "overflow", "linear", "edit"],
        help="Override the violation measure of every constraint that accepts it",
    )
    parser.add_argument("--zmax", type=int, help="Cap every cost variable at this value")
    parser.add_argument("--edit-weights", help="Substitution, insertion, deletion costs: s,i,d")
    parser.add_argument("--verbose", action="store_true", help="Show progress and debug logs on stderr")

    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.LOG_LEVEL,
        format=settings.LOG_FORMAT,
        stream=sys.stderr,
    )

    overrides = {"measure": args.measure, "zmax": args.zmax, "edit_weights": args.edit_weights}
    return COMMANDS[args.command](args.instance, overrides, args.verbose)


if __name__ == "__main__":
    sys.exit(main())
