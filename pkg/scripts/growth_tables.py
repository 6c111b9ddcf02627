#!/usr/bin/env python3
"""Regenerate the census growth tables as CSV.

Runs the standard query batteries (class counts by normalized volume and by
lattice-point count, with and without the symmetry/interior constraints) and
writes one CSV per battery, or everything to stdout.  Output is deterministic,
so reruns are byte-identical and diffable.
"""

import argparse
import pathlib
import sys

from latpoly import census

BATTERIES = (
    ("volume", "normalized_volume", "none"),
    ("volume-symmetric", "normalized_volume", "centrally_symmetric"),
    ("cardinality", "cardinality", "none"),
    ("cardinality-symmetric", "cardinality", "centrally_symmetric"),
    ("cardinality-interior", "cardinality", "nonempty_interior"),
)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-volume", type=int, default=6)
    parser.add_argument("--max-cardinality", type=int, default=12)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--out-dir",
        type=pathlib.Path,
        default=None,
        help="write <battery>.csv files here instead of stdout",
    )
    args = parser.parse_args(argv)

    for name, statistic, constraint in BATTERIES:
        if statistic == "normalized_volume":
            values = range(1, args.max_volume + 1)
        else:
            values = range(3, args.max_cardinality + 1)
        records = census.growth_table(
            statistic, list(values), constraint, workers=args.workers
        )
        text = census.records_to_csv(records)
        if args.out_dir is None:
            print(f"# {name}")
            sys.stdout.write(text)
        else:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            path = args.out_dir / f"{name}.csv"
            path.write_text(text)
            print(f"wrote {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
