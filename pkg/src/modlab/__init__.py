"""Channel-coding laboratory for pair-parity modulation codes: encoder and
channel models, belief-propagation decoding, analytical BER bounds, polar
component codes, the multilevel compound scheme, and an experiment harness."""

__version__ = "0.1.0"

from . import analysis, bp, channel, code, harness, multilevel, numerics, polar

__all__ = ["analysis", "bp", "channel", "code", "harness", "multilevel",
           "numerics", "polar", "__version__"]
