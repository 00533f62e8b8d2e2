#!/usr/bin/env python3
"""Genie-instrumented compound-code run: per-round BER against the frozen-bit
formula, plus the end-to-end information BER."""

import sys

from modlab.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["--m", "256", "--snr", "0", "--b", "4",
                            "--trials", "1000", "--genie",
                            "--out", "results/multilevel_run.csv"]
    sys.exit(main(["multilevel"] + args))
