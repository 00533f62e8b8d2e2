#!/usr/bin/env python3
"""BER sweep of the full decoder at m=128 with the three analytical bounds
(second figure). Takes about 20 minutes at the default trial count."""

import sys

from modlab.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["--m", "128", "--snr", "0", "1", "2", "3", "4", "5",
                            "--trials", "100000",
                            "--out", "results/fig2_ber_sweep.csv"]
    sys.exit(main(["simulate"] + args))
