"""Exact counting of (edge-)weighted homomorphisms into a fixed target.

The central routine is :func:`count_ewhom`, which evaluates

    sum over colourings sigma of  prod_v w_v(sigma(v))^{mu_v}
                                 * prod_e T_e(sigma(u), sigma(v))^{m_e}

with nonnegative rational vertex weights ``w_v``, per-edge ``h x h``
tables ``T_e`` (defaulting to the target's adjacency matrix, which
recovers plain homomorphism counting), entrywise edge multiplicities
``m_e``, and pendant-branch multiplicities ``mu_v``.  Arithmetic is kept
exact throughout: values stay Python ints while every input is integral
and switch to :class:`fractions.Fraction` otherwise.

Evaluation runs in three phases: pendant absorption (fold degree-one
vertices into their neighbour, which is where branch multiplicities are
resolved), isolated-vertex factoring, and bucket elimination over the
remaining core with a greedy minimum-degree order.  Only the summed-out
result factor of each elimination step is materialised.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .errors import HomredError
from .graphs import Graph, complete_bipartite_parts, components, j3star_tree


def _num(x):
    """Normalise a nonnegative rational: plain int when integral."""
    f = Fraction(x)
    if f < 0:
        raise HomredError("weights and table entries must be nonnegative")
    return int(f) if f.denominator == 1 else f


@dataclass
class WeightTable:
    """Vertex weight rows for a graph with ``n`` vertices and ``h`` colours.

    ``rows`` may cover any subset of vertices; missing vertices weigh 1
    in every colour.
    """

    n: int
    h: int
    rows: dict[int, tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.h < 1:
            raise HomredError("weight table needs at least one colour")
        clean = {}
        for v, row in self.rows.items():
            if not 0 <= v < self.n:
                raise HomredError(f"weight row for out-of-range vertex {v}")
            row = tuple(Fraction(x) for x in row)
            if len(row) != self.h:
                raise HomredError(f"weight row for vertex {v} has {len(row)} entries, needs {self.h}")
            if any(x < 0 for x in row):
                raise HomredError(f"negative weight on vertex {v}")
            clean[v] = row
        self.rows = clean

    def row(self, v: int) -> tuple[Fraction, ...]:
        got = self.rows.get(v)
        if got is None:
            return (Fraction(1),) * self.h
        return got


def adjacency_matrix(H: Graph) -> list[list[int]]:
    A = [[0] * H.n for _ in range(H.n)]
    for u, v in H.edges:
        A[u][v] = 1
        A[v][u] = 1
    return A


def matrix_product(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if not a:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                row[j] += a * Bt[j]
    return out


def entrywise_power(T, k: int):
    return [[x**k for x in row] for row in T]


@dataclass
class EdgeWeightedInstance:
    """A source graph with weights and tables against a fixed target.

    ``edge_tables`` maps a sorted edge ``(u, v)`` (``u < v``) to an
    ``h x h`` table whose rows are indexed by the colour of ``u``;
    missing edges use the target adjacency matrix.  ``edge_mult`` raises
    a table entrywise; ``vertex_mult`` replicates the whole pendant
    branch hanging at a vertex (the vertex must be absorbable, i.e. lie
    on a pendant chain or end up isolated, or evaluation refuses).
    """

    graph: Graph
    target: Graph
    vertex_weights: dict[int, tuple] = field(default_factory=dict)
    edge_tables: dict[tuple[int, int], list] = field(default_factory=dict)
    edge_mult: dict[tuple[int, int], int] = field(default_factory=dict)
    vertex_mult: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        h = self.target.n
        if h < 1:
            raise HomredError("target must have at least one vertex")
        for v, row in self.vertex_weights.items():
            if not 0 <= v < self.graph.n:
                raise HomredError(f"vertex weight for out-of-range vertex {v}")
            if len(row) != h:
                raise HomredError(f"vertex weight row for {v} needs {h} entries")
        edge_set = set(self.graph.edges)
        for e, table in self.edge_tables.items():
            if e not in edge_set:
                raise HomredError(f"table for non-edge {e}")
            if len(table) != h or any(len(r) != h for r in table):
                raise HomredError(f"table for edge {e} is not {h}x{h}")
        for e, m in self.edge_mult.items():
            if e not in edge_set:
                raise HomredError(f"multiplicity for non-edge {e}")
            if m < 1:
                raise HomredError(f"edge multiplicity for {e} must be >= 1")
        for v, m in self.vertex_mult.items():
            if not 0 <= v < self.graph.n:
                raise HomredError(f"vertex multiplicity for out-of-range vertex {v}")
            if m < 1:
                raise HomredError(f"vertex multiplicity for {v} must be >= 1")


class _Factor(NamedTuple):
    vars: tuple[int, ...]  # sorted
    values: list  # flat, row-major over vars, radix h


def _eliminate(v: int, factors: list[_Factor], h: int) -> list[_Factor]:
    touching = [f for f in factors if v in f.vars]
    rest = [f for f in factors if v not in f.vars]
    svars = sorted(set().union(*(f.vars for f in touching)) - {v})
    k = len(svars)
    pos = {u: i for i, u in enumerate(svars)}

    # Per factor: strides of its surviving vars within an assignment of
    # svars, plus the stride of v itself inside the factor's own layout.
    plans = []
    for f in touching:
        strides = []
        vstride = 0
        step = 1
        for u in reversed(f.vars):
            if u == v:
                vstride = step
            else:
                strides.append((pos[u], step))
            step *= h
        plans.append((f.values, strides, vstride))

    values = []
    for a in product(range(h), repeat=k):
        total = 0
        bases = [
            (vals, sum(a[p] * s for p, s in strides), vstride)
            for vals, strides, vstride in plans
        ]
        for c in range(h):
            term = 1
            for vals, base, vstride in bases:
                x = vals[base + c * vstride]
                if not x:
                    term = 0
                    break
                term = term * x
            if term:
                total = total + term
        values.append(total)
    rest.append(_Factor(tuple(svars), values))
    return rest


def count_ewhom(inst: EdgeWeightedInstance) -> Fraction:
    """Exact value of the weighted homomorphism sum for ``inst``."""
    G, H = inst.graph, inst.target
    h = H.n
    adjH = adjacency_matrix(H)

    weights = []
    for v in range(G.n):
        row = inst.vertex_weights.get(v)
        weights.append([_num(x) for x in row] if row is not None else [1] * h)

    tables: dict[tuple[int, int], list[list]] = {}
    for e in G.edges:
        raw = inst.edge_tables.get(e)
        T = [[_num(x) for x in row] for row in raw] if raw is not None else adjH
        m = inst.edge_mult.get(e, 1)
        if m > 1:
            T = entrywise_power(T, m)
        tables[e] = T

    def vmult(v: int) -> int:
        return inst.vertex_mult.get(v, 1)

    active = set(range(G.n))
    nbrs = {v: set(G.neighbours(v)) for v in range(G.n)}

    # Phase 1: absorb pendant vertices.  Multiplicity-bearing pendants
    # fold first (their power must cover only their own branch, so they
    # may never swallow a neighbour); ties break on smallest id.
    while True:
        u = min(
            (v for v in active if len(nbrs[v]) == 1),
            key=lambda v: (vmult(v) == 1, v),
            default=None,
        )
        if u is None:
            break
        nb = next(iter(nbrs[u]))
        e = (u, nb) if u < nb else (nb, u)
        T = tables.pop(e)
        wu = weights[u]
        if u < nb:  # rows of T are indexed by u's colour
            folded = [sum(T[c][cn] * wu[c] for c in range(h) if wu[c]) for cn in range(h)]
        else:
            folded = [sum(T[cn][c] * wu[c] for c in range(h) if wu[c]) for cn in range(h)]
        m = vmult(u)
        wnb = weights[nb]
        for c in range(h):
            f = folded[c] ** m if m > 1 else folded[c]
            wnb[c] = wnb[c] * f
        active.remove(u)
        nbrs[nb].remove(u)

    # Phase 2: isolated vertices contribute scalar factors.
    scalar = 1
    for v in sorted(active):
        if not nbrs[v]:
            scalar = scalar * sum(weights[v]) ** vmult(v)
            active.remove(v)
    if not scalar:
        return Fraction(0)

    for v in active:
        if vmult(v) > 1:
            raise HomredError(
                f"vertex multiplicity at vertex {v} needs a pendant branch, "
                "but the vertex survives into the elimination core"
            )

    # Phase 3: bucket elimination over the remaining core.
    factors = [
        _Factor(e, [T[cu][cv] for cu in range(h) for cv in range(h)])
        for e, T in tables.items()
        if e[0] in active
    ]
    factors += [_Factor((v,), weights[v]) for v in sorted(active)]

    while True:
        var_deg: dict[int, set[int]] = {}
        for f in factors:
            for u in f.vars:
                var_deg.setdefault(u, set()).update(f.vars)
        if not var_deg:
            break
        v = min(var_deg, key=lambda u: (len(var_deg[u]) - 1, u))
        factors = _eliminate(v, factors, h)

    for f in factors:  # all zero-var now
        scalar = scalar * f.values[0]
    return Fraction(scalar)


def count_hom(G: Graph, H: Graph) -> int:
    """Number of homomorphisms from G to H."""
    z = count_ewhom(EdgeWeightedInstance(G, H))
    assert z.denominator == 1
    return int(z)


def count_whom(G: Graph, H: Graph, wt: WeightTable) -> Fraction:
    """Vertex-weighted homomorphism sum from G to H."""
    if wt.n != G.n or wt.h != H.n:
        raise HomredError("weight table dimensions do not match the instance")
    vw = {v: wt.rows[v] for v in wt.rows}
    return count_ewhom(EdgeWeightedInstance(G, H, vertex_weights=vw))


def count_hom_pinned(G: Graph, H: Graph, pins: dict[int, int]) -> int:
    """Homomorphism count with selected source vertices pinned to colours."""
    vw = {}
    for v, c in pins.items():
        if not 0 <= v < G.n:
            raise HomredError(f"pin on out-of-range vertex {v}")
        if not 0 <= c < H.n:
            raise HomredError(f"pin to out-of-range colour {c}")
        row = [Fraction(0)] * H.n
        row[c] = Fraction(1)
        vw[v] = tuple(row)
    z = count_ewhom(EdgeWeightedInstance(G, H, vertex_weights=vw))
    assert z.denominator == 1
    return int(z)


def _component_two_colouring(G: Graph, comp: list[int]):
    """2-colour one component; sides as (S, S') with the smallest vertex in S."""
    colour = {comp[0]: 0}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for v in G.neighbours(u):
            if v not in colour:
                colour[v] = 1 - colour[u]
                queue.append(v)
            elif colour[v] == colour[u]:
                return None
    side0 = [v for v in comp if colour[v] == 0]
    side1 = [v for v in comp if colour[v] == 1]
    return side0, side1


def complete_bipartite_whom(G: Graph, H: Graph, wt: WeightTable) -> Fraction:
    """Closed-form weighted homomorphism sum into a complete bipartite target.

    Per connected component with 2-colouring (S, S') and target sides
    (U, U'), the component contributes

        prod_{v in S} W_v(U) * prod_{v in S'} W_v(U')
      + prod_{v in S} W_v(U') * prod_{v in S'} W_v(U)

    where ``W_v(X) = sum_{u in X} w_v(u)``; a non-bipartite component
    kills the whole product.  Single-vertex components degenerate to the
    full colour sum.  Matches :func:`count_whom` whenever the target is
    complete bipartite.
    """
    parts = complete_bipartite_parts(H)
    if parts is None:
        raise HomredError("target is not complete bipartite")
    if wt.n != G.n or wt.h != H.n:
        raise HomredError("weight table dimensions do not match the instance")
    U, Up = parts

    total = Fraction(1)
    for comp in components(G):
        split = _component_two_colouring(G, comp)
        if split is None:
            return Fraction(0)
        S, Sp = split

        def side_sum(v: int, side) -> Fraction:
            row = wt.row(v)
            return sum((row[u] for u in side), Fraction(0))

        term1 = Fraction(1)
        for v in S:
            term1 *= side_sum(v, U)
        for v in Sp:
            term1 *= side_sum(v, Up)
        term2 = Fraction(1)
        for v in S:
            term2 *= side_sum(v, Up)
        for v in Sp:
            term2 *= side_sum(v, U)
        total *= term1 + term2
        if not total:
            return Fraction(0)
    return total


class WalkProfile(NamedTuple):
    d1: int
    d2: int
    d3: int
    w1: int
    w2: int
    w3: int


def walk_profile(H: Graph, v: int) -> WalkProfile:
    """Simple-path counts d1..d3 and walk counts w1..w3 from vertex v.

    d_k counts simple paths of length exactly k starting at v (DFS with
    a visited set); w_k counts length-k walks (adjacency power row sums).
    On a tree d_k is just the size of the k-th distance layer.
    """
    paths = [0, 0, 0, 0]
    seen = {v}

    def dfs(u: int, depth: int):
        if depth == 3:
            return
        for t in H.neighbours(u):
            if t in seen:
                continue
            paths[depth + 1] += 1
            seen.add(t)
            dfs(t, depth + 1)
            seen.remove(t)

    dfs(v, 0)

    x = [1] * H.n
    walks = []
    for _ in range(3):
        x = [sum(x[t] for t in H.neighbours(u)) for u in range(H.n)]
        walks.append(x[v])
    return WalkProfile(paths[1], paths[2], paths[3], *walks)


WALK_TABLE_ROWS = (
    "w",
    "x0",
    "x1",
    "x2_1",
    "y0",
    "y1",
    "y2_1",
    "y3_1_1",
    "z0",
    "z1",
    "z2_1",
    "z3_1_1",
    "z4_1_1_1",
)


def j3star_walk_table() -> list[tuple[str, WalkProfile]]:
    """Walk profiles of one representative per orbit of the 58-vertex tree."""
    tree = j3star_tree()
    return [(lbl, walk_profile(tree.graph, tree.vertex(lbl))) for lbl in WALK_TABLE_ROWS]


def format_walk_table(rows: list[tuple[str, WalkProfile]]) -> str:
    """Fixed-width rendering: label column 8 wide, numbers right-aligned in 3."""
    width = max(len("z4_1_1_1"), max((len(lbl) for lbl, _ in rows), default=0))
    head = "h".ljust(width) + "".join("  " + c.rjust(3) for c in WalkProfile._fields)
    lines = [head]
    for lbl, prof in rows:
        lines.append(lbl.ljust(width) + "".join("  " + str(x).rjust(3) for x in prof))
    return "\n".join(lines) + "\n"
