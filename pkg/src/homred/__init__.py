"""Exact counting of graph homomorphisms into trees, Potts partition
functions, implication CSPs, and code weight enumerators, together with
the reduction gadgets tying them to one another.

Everything is exact: integers and ``fractions.Fraction`` throughout, no
floating point.  The most used entry points are re-exported here; the
submodules hold the rest.
"""

from .csp import CspInstance, WeightedCspInstance, count_csp, count_wcsp
from .errors import FormatError, HomredError
from .graphs import Graph, Hypergraph, classify_tree
from .homcount import WeightTable, count_hom, count_whom
from .potts import potts_graph, potts_hypergraph

__version__ = "0.1.0"

__all__ = [
    "CspInstance",
    "FormatError",
    "Graph",
    "HomredError",
    "Hypergraph",
    "WeightTable",
    "WeightedCspInstance",
    "classify_tree",
    "count_csp",
    "count_hom",
    "count_whom",
    "count_wcsp",
    "potts_graph",
    "potts_hypergraph",
    "__version__",
]
