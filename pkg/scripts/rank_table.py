#!/usr/bin/env python3
"""Print the full desk-scale rank/kernel-dimension table as CSV."""

import sys

from gaussmap.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["rank-table", "--g", "3..12"]
    if args[0] != "rank-table":
        args = ["rank-table", *args]
    sys.exit(main(args))
