# liegalois – exact Lie algebra extensions and their Galois groups
# ----------------------------------------------------------------
# Pure computation over Q and F_p.  numpy is only touched inside
# liegal.kernels; everything else works on exact Python scalars.

__version__ = "1.0.0"
