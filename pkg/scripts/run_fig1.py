#!/usr/bin/env python3
"""Tabulate the mean-offset map R_c(x) for a family of SNRs (first figure)."""

import sys

from modlab.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["--snr", "-6", "-3", "0", "3",
                            "--out", "results/fig1_fixed_point.csv"]
    sys.exit(main(["fixedpoint"] + args))
