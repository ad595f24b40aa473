"""Independent brute-force oracles and small-instance generators.

Everything here is deliberately naive: plain enumeration over all
colourings or assignments, no folding, no elimination.  The point is to
have a second implementation that shares no code with the package.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from itertools import permutations, product

import networkx as nx

from homred.graphs import Graph


def naive_hom(G: Graph, H: Graph) -> int:
    adj = [set(H.neighbours(v)) for v in range(H.n)]
    count = 0
    for assign in product(range(H.n), repeat=G.n):
        if all(assign[v] in adj[assign[u]] for u, v in G.edges):
            count += 1
    return count


def naive_whom(G: Graph, H: Graph, rows) -> Fraction:
    """rows: mapping or list giving each G-vertex its weight row."""
    adj = [set(H.neighbours(v)) for v in range(H.n)]
    total = Fraction(0)
    for assign in product(range(H.n), repeat=G.n):
        if all(assign[v] in adj[assign[u]] for u, v in G.edges):
            term = Fraction(1)
            for v in range(G.n):
                term *= Fraction(rows[v][assign[v]])
            total += term
    return total


def naive_ewhom(G: Graph, H: Graph, vertex_weights=None, edge_tables=None, edge_mult=None):
    """Brute-force the edge-weighted sum.  No vertex multiplicities here:
    those are checked against explicitly materialised graphs instead."""
    vertex_weights = vertex_weights or {}
    edge_tables = edge_tables or {}
    edge_mult = edge_mult or {}
    A = [[0] * H.n for _ in range(H.n)]
    for u, v in H.edges:
        A[u][v] = A[v][u] = 1
    total = Fraction(0)
    for assign in product(range(H.n), repeat=G.n):
        term = Fraction(1)
        for v in range(G.n):
            row = vertex_weights.get(v)
            if row is not None:
                term *= Fraction(row[assign[v]])
            if not term:
                break
        else:
            for e in G.edges:
                u, v = e
                T = edge_tables.get(e)
                x = Fraction(T[assign[u]][assign[v]]) if T is not None else Fraction(A[assign[u]][assign[v]])
                term *= x ** edge_mult.get(e, 1)
                if not term:
                    break
        if term:
            total += term
    return total


def naive_csp(nvars, imps, pins0=(), pins1=(), weights=None):
    """Count (or weigh) assignments of a binary implication CSP."""
    total = Fraction(0)
    for assign in product((0, 1), repeat=nvars):
        if any(assign[x] for x in pins0):
            continue
        if any(not assign[x] for x in pins1):
            continue
        if any(assign[x] and not assign[y] for x, y in imps):
            continue
        if weights is None:
            total += 1
        else:
            term = Fraction(1)
            for v in range(nvars):
                term *= Fraction(weights[v][assign[v]])
            total += term
    return total if weights is not None else int(total)


def naive_independent_sets(G: Graph) -> int:
    count = 0
    for sub in product((0, 1), repeat=G.n):
        if all(not (sub[u] and sub[v]) for u, v in G.edges):
            count += 1
    return count


def naive_contains_induced(G: Graph, P: Graph) -> bool:
    verts = range(G.n)
    for combo in permutations(verts, P.n):
        ok = True
        for u in range(P.n):
            for v in range(u + 1, P.n):
                if P.has_edge(u, v) != G.has_edge(combo[u], combo[v]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# canonical forms and generators


def ahu_rooted(G: Graph, root: int, parent: int = -1) -> str:
    subs = sorted(ahu_rooted(G, c, root) for c in G.neighbours(root) if c != parent)
    return "(" + "".join(subs) + ")"


def ahu_canonical(G: Graph) -> str:
    """Canonical string of an unrooted tree: minimum over root choices.

    Quadratic and proud of it; only used on trees with <= 60 vertices.
    """
    return min(ahu_rooted(G, r) for r in range(G.n))


def from_networkx(g) -> Graph:
    nodes = sorted(g.nodes())
    idx = {u: i for i, u in enumerate(nodes)}
    return Graph(len(nodes), [(idx[u], idx[v]) for u, v in g.edges()])


def atlas_graphs(max_n, connected=None, bipartite=None, max_edges=None):
    """All graphs up to isomorphism with 1..max_n vertices (max_n <= 7)."""
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if not 1 <= n <= max_n:
            continue
        if max_edges is not None and g.number_of_edges() > max_edges:
            continue
        if connected is not None and nx.is_connected(g) != connected:
            continue
        if bipartite is not None and nx.is_bipartite(g) != bipartite:
            continue
        out.append(from_networkx(g))
    return out


def nonisomorphic_trees(n: int):
    return [from_networkx(t) for t in nx.nonisomorphic_trees(n)]


def random_tree(rng: random.Random, n: int) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = sorted(leaves)
    edges.append((u, v))
    return Graph(n, edges)


def random_connected_bipartite(rng: random.Random, n: int, extra: int = 2) -> Graph:
    """Random tree plus up to ``extra`` parity-respecting chords."""
    T = random_tree(rng, n)
    if T.bipartition is None:
        raise AssertionError("trees are bipartite")
    left, right = T.bipartition
    edges = set(T.edges)
    candidates = [
        (min(u, v), max(u, v))
        for u in left
        for v in right
        if (min(u, v), max(u, v)) not in edges
    ]
    rng.shuffle(candidates)
    edges.update(candidates[:extra])
    return Graph(n, sorted(edges))


def random_weight_rows(rng: random.Random, n: int, h: int, zero_chance=0.15, max_num=6):
    rows = {}
    for v in range(n):
        row = []
        for _ in range(h):
            if rng.random() < zero_chance:
                row.append(Fraction(0))
            else:
                row.append(Fraction(rng.randint(1, max_num), rng.randint(1, 4)))
        rows[v] = tuple(row)
    return rows
