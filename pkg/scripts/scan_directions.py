#!/usr/bin/env python3
"""Classify invariant Schiffer directions for one genus (default 6)."""

import sys

from gaussmap.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["scan", "--g", "6", "--samples", "100", "--seed", "7"]
    if args[0] != "scan":
        args = ["scan", *args]
    sys.exit(main(args))
