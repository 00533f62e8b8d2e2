#!/usr/bin/env python3
"""Minimum-SNR table over block counts plus a bounds table for reference."""

import sys

from modlab.cli import main

if __name__ == "__main__":
    rc = main(["capacity", "--b", "100", "1000",
               "--out", "results/capacity_table.csv"])
    rc |= main(["bounds", "--m", "128", "--snr", "0", "1", "2", "3", "4", "5",
                "--out", "results/bounds_table.csv"])
    sys.exit(rc)
