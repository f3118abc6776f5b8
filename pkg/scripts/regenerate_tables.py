#!/usr/bin/env python3
"""Regenerate the frozen module-arithmetic table file from resolutions.

The table file is the single source the repring module reads; only
this script (driving the resolution verifier) may rewrite it.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from crystalk import oracle

DEFAULT_TARGET = (
    pathlib.Path(__file__).resolve().parent.parent
    / "src" / "crystalk" / "data" / "repring_tables.json"
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=DEFAULT_TARGET)
    parser.add_argument(
        "--check", action="store_true",
        help="compare against the existing file instead of writing",
    )
    args = parser.parse_args()

    rendered = oracle.render_table_file_bytes()
    if args.check:
        current = args.out.read_bytes()
        if current == rendered:
            print(f"{args.out}: byte-identical with regenerated tables")
            return 0
        print(f"{args.out}: DIFFERS from regenerated tables", file=sys.stderr)
        return 1

    args.out.parent.mkdir(parents=True, exist_ok=True)
    changed = not args.out.exists() or args.out.read_bytes() != rendered
    args.out.write_bytes(rendered)
    print(f"wrote {args.out} ({'changed' if changed else 'unchanged'}, {len(rendered)} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
