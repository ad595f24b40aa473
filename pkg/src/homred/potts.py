"""Potts partition functions on graphs and hypergraphs, by enumeration.

These are the reference evaluators the reduction machinery is checked
against, so they stay deliberately direct: iterate over all q^n spin
assignments, histogram the number of monochromatic (hyper)edges, and
evaluate sum_k count_k * (1+gamma)^k.  The histogram is exposed
separately so several gamma values can share one enumeration pass.

Enumeration refuses instances with q^n (or 2^m for the random-cluster
sum) beyond a cap of 10^8, overridable through the HOMRED_ENUM_CAP
environment variable.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .errors import HomredError
from .graphs import Graph, Hypergraph, complete_graph, two_stretch
from .homcount import count_hom


def enumeration_cap(default: int = 10**8) -> int:
    """The enumeration budget: HOMRED_ENUM_CAP when set, else ``default``."""
    return int(os.environ.get("HOMRED_ENUM_CAP", str(default)))


def _check_cap(size: int, what: str):
    cap = enumeration_cap()
    if size > cap:
        raise HomredError(f"{what} needs {size} enumeration steps, above the cap of {cap}")


@dataclass(frozen=True)
class PottsParams:
    q: int
    gamma: Fraction

    def __post_init__(self):
        if self.q < 1:
            raise HomredError("Potts model needs q >= 1 spins")
        object.__setattr__(self, "gamma", Fraction(self.gamma))


def potts_mono_histogram(G: Graph, q: int) -> dict[int, int]:
    """How many spin assignments have exactly k monochromatic edges, per k."""
    if q < 1:
        raise HomredError("Potts model needs q >= 1 spins")
    _check_cap(q**G.n, f"Potts sum on {G.n} vertices with q={q}")
    hist: Counter[int] = Counter()
    edges = G.edges
    for sigma in product(range(q), repeat=G.n):
        mono = 0
        for u, v in edges:
            if sigma[u] == sigma[v]:
                mono += 1
        hist[mono] += 1
    return dict(hist)


def potts_graph(G: Graph, q: int, gamma) -> Fraction:
    """Z_Potts(G; q, gamma) = sum_sigma prod_edges (1 + gamma * [same spin])."""
    gamma = Fraction(gamma)
    hist = potts_mono_histogram(G, q)
    base = 1 + gamma
    return sum((cnt * base**k for k, cnt in hist.items()), Fraction(0))


def hypergraph_mono_histogram(HG: Hypergraph, q: int) -> dict[int, int]:
    """Histogram of the multiplicity-weighted count of monochromatic hyperedges.

    Duplicate hyperedges act as independent factors, so a hyperedge with
    multiplicity m contributes m to the exponent when monochromatic.
    """
    if q < 1:
        raise HomredError("Potts model needs q >= 1 spins")
    _check_cap(q**HG.n, f"Potts sum on {HG.n} vertices with q={q}")
    grouped = Counter(HG.hyperedges)
    hist: Counter[int] = Counter()
    for sigma in product(range(q), repeat=HG.n):
        k = 0
        for f, mult in grouped.items():
            first = sigma[f[0]]
            if all(sigma[v] == first for v in f[1:]):
                k += mult
        hist[k] += 1
    return dict(hist)


def potts_hypergraph(HG: Hypergraph, q: int, gamma) -> Fraction:
    """Hypergraph Potts sum; a hyperedge is satisfied iff monochromatic."""
    gamma = Fraction(gamma)
    hist = hypergraph_mono_histogram(HG, q)
    base = 1 + gamma
    return sum((cnt * base**k for k, cnt in hist.items()), Fraction(0))


def random_cluster_graph(G: Graph, q: int, gamma) -> Fraction:
    """The subset expansion sum_{A subseteq E} gamma^|A| q^{c(A)}.

    c(A) counts connected components of (V, A), isolated vertices
    included.  Agrees with potts_graph on every graph.
    """
    if q < 1:
        raise HomredError("random-cluster sum needs q >= 1")
    gamma = Fraction(gamma)
    m = len(G.edges)
    _check_cap(2**m, f"random-cluster sum over {m} edges")
    gpow = [Fraction(1)]
    for _ in range(m):
        gpow.append(gpow[-1] * gamma)
    qpow = [1]
    for _ in range(G.n):
        qpow.append(qpow[-1] * q)

    total = Fraction(0)
    edges = G.edges
    for mask in range(1 << m):
        parent = list(range(G.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = G.n
        rest = mask
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            u, v = edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        total += gpow[mask.bit_count()] * qpow[comps]
    return total


def count_proper_colourings(G: Graph, q: int) -> int:
    """Number of proper q-colourings of a bipartite graph (homs into K_q)."""
    if q < 1:
        raise HomredError("colouring needs q >= 1")
    if G.bipartition is None:
        raise HomredError("proper-colouring counting is scoped to bipartite graphs")
    return count_hom(G, complete_graph(q))


class BqColReduction(NamedTuple):
    stretched: Graph
    midpoints: dict[tuple[int, int], int]
    q: int
    gamma: Fraction
    scale: int  # (q-2)^|E|


def reduce_potts_to_bqcol(G: Graph, q: int) -> BqColReduction:
    """Relate proper q-colourings of the 2-stretch to a Potts sum on G.

    For q > 2, counting proper q-colourings of the once-subdivided graph
    evaluates (q-2)^|E| * Z_Potts(G; q, 1/(q-2)): a subdivision midpoint
    has q-1 admissible colours when its two ends agree and q-2 otherwise.
    """
    if q <= 2:
        raise HomredError("the colouring identity needs q > 2")
    stretched, mid = two_stretch(G)
    return BqColReduction(stretched, mid, q, Fraction(1, q - 2), (q - 2) ** len(G.edges))
