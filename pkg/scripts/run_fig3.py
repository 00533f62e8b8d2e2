#!/usr/bin/env python3
"""Frozen-bit BER sweep at m=128 against Q(sqrt(c X(lambda))) (third figure)."""

import sys

from modlab.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["--m", "128", "--snr", "-2", "0", "2",
                            "--lambda", "0.25", "0.5", "0.75",
                            "--trials", "100000",
                            "--out", "results/fig3_frozen_sweep.csv"]
    sys.exit(main(["simulate"] + args))
