"""Default size caps for exhaustive computations.

Everything in this package is decided by brute force over explicit tables,
so object sizes are capped.  The defaults are desk scale; raise them per
call (every constructor takes a ``cap`` argument) or via the CLI flags.
"""

DEFAULT_RING_CAP = 16
DEFAULT_MODULE_CAP = 64
DEFAULT_UNIVERSE_DEPTH = 2

# Endomorphism rings of large modules blow past the ring cap quickly; the
# deciders that need End(M) as a ring treat modules above this as out of
# range rather than grinding through huge tables.
DEFAULT_ENDO_RING_CAP = 64

# Guard for the generator-image search in hom-set enumeration.
MAX_HOM_CANDIDATES = 4_000_000
