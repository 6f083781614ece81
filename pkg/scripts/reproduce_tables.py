#!/usr/bin/env python3
"""Render all four reference tables (bound formula grids and the two
worked answer tables) as markdown."""
import sys

from graphpir.tables import render_table


def main() -> int:
    for name in ("tableI", "tableII", "tableIII", "tableIV"):
        print("## %s" % name)
        print()
        print(render_table(name))
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
