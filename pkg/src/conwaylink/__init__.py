"""Link invariants valued in generalized Conway algebras.

The package computes a skein-recursive invariant of oriented link
diagrams with values in a family of algebras carrying two pairs of
mutually inverse binary operations, one pair applied at self crossings
and one at crossings between distinct components.  Alongside the core
engine it ships symbolic axiom checking, Reidemeister-move fuzzing,
a power-series probe of the invariant's low-degree behaviour, a fixture
catalog, an HTTP service, and a command-line client.
"""

__version__ = "0.1.0"
