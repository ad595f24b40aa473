"""Reduction gadgets between counting problems, with checkable certificates.

Each builder turns an instance of one problem into an instance of
another and returns, alongside the built object, a
:class:`ReductionCertificate` recording the construction parameters,
the canonical scale factor, and the additive slack of the guarantee:
``0`` for exact identities and ``1/4`` for the sandwich constructions,
whose scaled value V satisfies  answer <= V <= answer + 1/4  so the
answer is recovered as floor(V).

The five kinds:

- ``cut-to-whom``: counting minimum 3-terminal cuts via weighted
  homomorphisms into any tree with an induced 3-branch junction.
- ``potts-to-jq``: the Potts sum at gamma = 1 via plain homomorphism
  counting into the junction tree with q branches.
- ``jq-to-hyperpotts``: side-restricted junction-tree homomorphisms as
  a hypergraph Potts sum at gamma = 1 (exact).
- ``uniformize``: a hypergraph Potts sum as one with uniform edge size.
- ``cut-to-j3star``: minimum 3-terminal cuts via plain homomorphism
  counting into the fixed 58-vertex decorated junction tree.

Certificates serialise to JSON; verification rebuilds the construction
from the recorded inputs, recomputes every constant, re-evaluates the
count, and checks the sandwich against an independently enumerated
ground truth.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .errors import HomredError
from .graphs import Graph, Hypergraph, junction_tree, j3star_tree, two_stretch
from .homcount import (
    EdgeWeightedInstance,
    WeightTable,
    adjacency_matrix,
    count_ewhom,
    matrix_product,
)
from .potts import enumeration_cap, potts_graph, potts_hypergraph

# Scale constants routinely exceed CPython's 4300-digit int<->str cap
# (a default J3* run carries 4968^1555, ~5700 digits), so certificates
# could neither be written nor parsed back without lifting it.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


@dataclass(frozen=True)
class CutInstance:
    """A graph with three distinct terminal vertices to disconnect."""

    graph: Graph
    terminals: tuple[int, int, int]

    def __post_init__(self):
        a, b, c = self.terminals
        if len({a, b, c}) != 3:
            raise HomredError("terminals must be three distinct vertices")
        for t in self.terminals:
            if not 0 <= t < self.graph.n:
                raise HomredError(f"terminal {t} out of range")
        if not self.graph.is_connected():
            raise HomredError("cut instances must be connected")


def multiterminal_cuts(G: Graph, terminals) -> tuple[int, int]:
    """Size and number of minimum edge sets separating all three terminals.

    Enumerates edge subsets by increasing size and returns ``(b, N)``:
    the smallest size b of a subset whose removal leaves the terminals
    pairwise disconnected, and the number N of subsets of that size.
    """
    a, b, c = terminals
    if len({a, b, c}) != 3:
        raise HomredError("terminals must be three distinct vertices")
    if not G.is_connected():
        raise HomredError("cut counting expects a connected graph")
    m = len(G.edges)
    if 2**m > enumeration_cap(default=2**24):
        raise HomredError(f"cut enumeration over {m} edges is above the cap")

    def separated(removed: frozenset) -> bool:
        parent = list(range(G.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, (u, v) in enumerate(G.edges):
            if i in removed:
                continue
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(a), find(b), find(c)}) == 3

    for size in range(m + 1):
        count = sum(1 for sub in combinations(range(m), size) if separated(frozenset(sub)))
        if count:
            return size, count
    raise HomredError("terminals cannot be separated")  # unreachable for distinct terminals


J3_ROLES = ("w", "x0", "x1", "y0", "y1", "z0", "z1")


def find_induced_j3(H: Graph) -> dict[str, int] | None:
    """Role map of the lexicographically first induced 3-branch junction.

    For trees only: picks the smallest centre w with three neighbours of
    degree at least two, the smallest such neighbour triple as
    (x0, y0, z0), and the smallest second-level vertices x1, y1, z1.
    Returns ``None`` when the tree has no junction.
    """
    if not H.is_tree():
        raise HomredError("junction search expects a tree")
    for w in range(H.n):
        deep = [t for t in H.neighbours(w) if H.degree(t) >= 2]
        if len(deep) < 3:
            continue
        x0, y0, z0 = deep[0], deep[1], deep[2]
        roles = {"w": w, "x0": x0, "y0": y0, "z0": z0}
        for key, branch in (("x1", x0), ("y1", y0), ("z1", z0)):
            roles[key] = min(t for t in H.neighbours(branch) if t != w)
        return roles
    return None


def _ser(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


def _deser_fraction(x) -> Fraction:
    return Fraction(x)


@dataclass
class ReductionCertificate:
    """Reproducible record of one reduction run.

    ``inputs`` holds everything needed to rebuild the construction,
    ``constants`` the derived parameters (always including the
    canonical ``scale``), ``counters`` informational exact values, and
    ``slack`` the additive loss of the guarantee (0 or 1/4).
    """

    kind: str
    inputs: dict
    constants: dict
    slack: Fraction
    counters: dict = field(default_factory=dict)

    def value(self) -> Fraction:
        return certificate_value(self)

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "inputs": {k: _ser(v) for k, v in self.inputs.items()},
            "constants": {k: _ser(v) for k, v in self.constants.items()},
            "counters": {k: _ser(v) for k, v in self.counters.items()},
            "slack": _ser(self.slack),
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReductionCertificate":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise HomredError(f"certificate is not valid JSON: {exc}") from None
        try:
            kind = payload["kind"]
            if kind not in _BUILDERS:
                raise HomredError(f"unknown certificate kind {kind!r}")
            cert = cls(
                kind=kind,
                inputs=dict(payload["inputs"]),
                constants=dict(payload["constants"]),
                counters=dict(payload.get("counters", {})),
                slack=Fraction(payload["slack"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise HomredError(f"malformed certificate: {exc}") from None
        return cert


def _graph_to_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _graph_from_obj(obj) -> Graph:
    return Graph(obj["n"], [tuple(e) for e in obj["edges"]])


def _hypergraph_to_obj(hg: Hypergraph) -> dict:
    return {"n": hg.n, "hyperedges": [list(f) for f in hg.hyperedges]}


def _hypergraph_from_obj(obj) -> Hypergraph:
    return Hypergraph(obj["n"], [tuple(f) for f in obj["hyperedges"]])


# ---------------------------------------------------------------------------
# cut-to-whom: minimum 3-terminal cuts via weighted homomorphisms


def _junction_midpoint_table(H: Graph, roles: dict[str, int]) -> list[list[int]]:
    """Common-neighbour counts through the four high-side role vertices."""
    mids = [roles["w"], roles["x1"], roles["y1"], roles["z1"]]
    A = adjacency_matrix(H)
    h = H.n
    return [[sum(A[c1][c] * A[c][c2] for c in mids) for c2 in range(h)] for c1 in range(h)]


def build_cut_to_whom(cut: CutInstance, H: Graph, s_override: int | None = None):
    """Weighted homomorphism instance whose scaled value sandwiches the
    number of minimum 3-terminal cuts.

    The target may be any tree containing an induced 3-branch junction;
    its role vertices are located automatically.  Every source edge is
    replaced by s parallel length-two paths whose midpoints may only
    take the four high-side roles (folded into an entrywise table
    power), source vertices are confined to the three branch roots, and
    each terminal is pinned to its own branch.  With
    s = 2 + |E| + 2|V|, the count divided by 2^{s(|E|-b)} lies within
    1/4 above the number N of minimum cuts.

    Returns ``(instance, certificate)``.
    """
    G = cut.graph
    roles = find_induced_j3(H)
    if roles is None:
        raise HomredError("target tree has no induced 3-branch junction")
    n, m = G.n, len(G.edges)
    s = s_override if s_override is not None else 2 + m + 2 * n
    if s < 1:
        raise HomredError("path multiplicity s must be >= 1")
    b, ncuts = multiterminal_cuts(G, cut.terminals)

    table = _junction_midpoint_table(H, roles)
    h = H.n
    branch_roots = (roles["x0"], roles["y0"], roles["z0"])

    def indicator(cols) -> tuple:
        row = [0] * h
        for c in cols:
            row[c] = 1
        return tuple(row)

    vertex_weights = {v: indicator(branch_roots) for v in range(n)}
    for t, role_root in zip(cut.terminals, branch_roots):
        vertex_weights[t] = indicator([role_root])

    inst = EdgeWeightedInstance(
        G,
        H,
        vertex_weights=vertex_weights,
        edge_tables={e: table for e in G.edges},
        edge_mult={e: s for e in G.edges},
    )
    cert = ReductionCertificate(
        kind="cut-to-whom",
        inputs={
            "graph": _graph_to_obj(G),
            "terminals": list(cut.terminals),
            "target": _graph_to_obj(H),
            "s": s,
        },
        constants={"s": s, "b": b, "scale": 2 ** (s * (m - b)), "roles": dict(roles)},
        slack=Fraction(1, 4),
        counters={"min_cuts": ncuts},
    )
    return inst, cert


def materialise_cut_to_whom(cut: CutInstance, H: Graph, s: int):
    """Explicit midpoint version of :func:`build_cut_to_whom`.

    Returns ``(graph, weight_table)`` with s physical midpoints per
    source edge; counting weighted homomorphisms of the pair agrees
    with the folded instance.  Meant for small cross-checks.
    """
    G = cut.graph
    roles = find_induced_j3(H)
    if roles is None:
        raise HomredError("target tree has no induced 3-branch junction")
    n, m = G.n, len(G.edges)
    edges = []
    rows: dict[int, tuple] = {}
    h = H.n

    def indicator(cols) -> tuple:
        row = [Fraction(0)] * h
        for c in cols:
            row[c] = Fraction(1)
        return tuple(row)

    branch_roots = (roles["x0"], roles["y0"], roles["z0"])
    for v in range(n):
        rows[v] = indicator(branch_roots)
    for t, role_root in zip(cut.terminals, branch_roots):
        rows[t] = indicator([role_root])
    mid_roles = indicator([roles["w"], roles["x1"], roles["y1"], roles["z1"]])
    for i, (u, v) in enumerate(G.edges):
        for j in range(s):
            mid = n + i * s + j
            edges.append((u, mid))
            edges.append((mid, v))
            rows[mid] = mid_roles
    total = n + m * s
    return Graph(total, edges), WeightTable(total, h, rows)


# ---------------------------------------------------------------------------
# potts-to-jq: the Potts sum at gamma = 1 via junction-tree homomorphisms


class PottsJqReduction(NamedTuple):
    instance: EdgeWeightedInstance
    pinned: EdgeWeightedInstance  # apex forced to the junction centre


def minimal_potts_jq_s(G: Graph, q: int) -> int:
    """Smallest s with (q/2)^s >= 8q (q+1)^{|V|+|E|}."""
    if q < 3:
        raise HomredError("the junction-tree reduction needs q >= 3")
    rhs = 8 * q * (q + 1) ** (G.n + len(G.edges))
    s = 1
    pq, p2 = q, 2
    while pq < rhs * p2:
        s += 1
        pq *= q
        p2 *= 2
    return s


def build_potts_to_jq(G: Graph, q: int, s_override: int | None = None):
    """Potts partition function at gamma = 1 from one homomorphism count.

    The source is subdivided once per edge (midpoints folded into a
    squared-adjacency table), an apex is attached to vertex 0, and a
    pendant star of s leaves hangs at the apex (folded into a degree
    power).  Homomorphisms into the junction tree with the apex on the
    centre contribute exactly q^s * Z_Potts(G; q, 1); the rest total at
    most a quarter of q^s.  Requires G connected and q >= 3.

    Returns ``(PottsJqReduction, certificate)``.
    """
    if q < 3:
        raise HomredError("the junction-tree reduction needs q >= 3")
    if G.n < 1 or not G.is_connected():
        raise HomredError("the source graph must be connected and nonempty")
    s = s_override if s_override is not None else minimal_potts_jq_s(G, q)
    if s < 1:
        raise HomredError("star size s must be >= 1")

    target = junction_tree(q)
    A = adjacency_matrix(target.graph)
    A2 = matrix_product(A, A)

    apex = G.n
    leaf = G.n + 1
    core = Graph(G.n + 2, list(G.edges) + [(0, apex), (apex, leaf)])
    inst = EdgeWeightedInstance(
        core,
        target.graph,
        edge_tables={e: A2 for e in G.edges},
        vertex_mult={leaf: s},
    )
    centre = target.vertex("w")
    pin_row = tuple(1 if c == centre else 0 for c in range(target.graph.n))
    pinned = EdgeWeightedInstance(
        core,
        target.graph,
        vertex_weights={apex: pin_row},
        edge_tables={e: A2 for e in G.edges},
        vertex_mult={leaf: s},
    )
    typical = count_ewhom(pinned)
    assert typical.denominator == 1
    cert = ReductionCertificate(
        kind="potts-to-jq",
        inputs={"graph": _graph_to_obj(G), "q": q, "s": s},
        constants={"q": q, "s": s, "scale": q**s},
        slack=Fraction(1, 4),
        counters={"typical": int(typical)},
    )
    return PottsJqReduction(inst, pinned), cert


def materialise_potts_to_jq(G: Graph, s: int) -> Graph:
    """Explicit source graph of :func:`build_potts_to_jq`: the 2-stretch
    of G, an apex joined to vertex 0, and s pendant leaves on the apex.

    Plain homomorphism counting into the junction tree agrees with the
    folded instance; meant for emission and small cross-checks.
    """
    if G.n < 1 or not G.is_connected():
        raise HomredError("the source graph must be connected and nonempty")
    if s < 1:
        raise HomredError("star size s must be >= 1")
    stretched, _ = two_stretch(G)
    apex = stretched.n
    edges = list(stretched.edges) + [(0, apex)]
    edges += [(apex, apex + 1 + i) for i in range(s)]
    return Graph(stretched.n + 1 + s, edges)


# ---------------------------------------------------------------------------
# jq-to-hyperpotts: side-restricted junction homomorphisms, exactly


class JqHyperPottsReduction(NamedTuple):
    hypergraph: Hypergraph
    restricted: EdgeWeightedInstance  # homomorphism side of the identity
    occupied: tuple[int, ...]  # source vertices restricted to branch midpoints


def build_jq_to_hyperpotts(B: Graph, q: int, side: str = "left"):
    """Restricted homomorphism count into the junction tree as an exact
    hypergraph Potts value.

    Sums homomorphisms of the bipartite graph B that keep the chosen
    side on the q branch midpoints c'_1..c'_q: every opposite-side
    vertex then sits on the centre or follows a monochromatic
    neighbourhood, contributing a factor 2 per monochromatic
    neighbourhood.  That is the Potts sum at gamma = 1 of the
    hypergraph on the chosen side whose hyperedges are the
    neighbourhoods (kept as a multiset) of the opposite side.

    Returns ``(JqHyperPottsReduction, certificate)``.
    """
    if q < 1:
        raise HomredError("junction tree needs q >= 1")
    if side not in ("left", "right"):
        raise HomredError("side must be 'left' or 'right'")
    if B.bipartition is None:
        raise HomredError("source graph must be bipartite")
    left, right = B.bipartition
    occupied = sorted(left if side == "left" else right)
    others = sorted(right if side == "left" else left)
    for v in others:
        if B.degree(v) == 0:
            raise HomredError(
                f"vertex {v} on the unrestricted side is isolated; its neighbourhood "
                "gives an empty hyperedge"
            )
    index = {u: i for i, u in enumerate(occupied)}
    hyperedges = [tuple(sorted(index[u] for u in B.neighbours(v))) for v in others]
    hg = Hypergraph(len(occupied), hyperedges)

    target = junction_tree(q)
    mids = [target.vertex(f"c'{i}") for i in range(1, q + 1)]
    row = tuple(1 if c in set(mids) else 0 for c in range(target.graph.n))
    restricted = EdgeWeightedInstance(
        B, target.graph, vertex_weights={u: row for u in occupied}
    )
    cert = ReductionCertificate(
        kind="jq-to-hyperpotts",
        inputs={"graph": _graph_to_obj(B), "q": q, "side": side},
        constants={"q": q, "scale": 1},
        slack=Fraction(0),
    )
    return JqHyperPottsReduction(hg, restricted, tuple(occupied)), cert


# ---------------------------------------------------------------------------
# uniformize: equalise hyperedge sizes


def minimal_uniformize_s(HG: Hypergraph, q: int, gamma: Fraction, t: int) -> int:
    """Smallest s with (1+gamma)^s >= 4 q^{n + m(t-1)} (1+gamma)^m."""
    base = 1 + gamma
    if base <= 1:
        raise HomredError("uniformization needs gamma > 0")
    n, m = HG.n, len(HG.hyperedges)
    rhs = 4 * Fraction(q) ** (n + m * (t - 1)) * base**m
    s = 1
    p = base
    while p < rhs:
        s += 1
        p *= base
    return s


def uniformize(HG: Hypergraph, q: int, gamma, s_override: int | None = None):
    """Pad a hypergraph to uniform edge size, preserving the Potts sum.

    Each hyperedge gains t-1 private padding vertices: the hyperedge is
    padded up to the maximum size t, and s anchor copies of the size-t
    hyperedge {smallest original vertex, all padding vertices} force
    the padding monochromatic with the anchor in the dominant part of
    the sum.  The original value Z satisfies
    Z <= Z' / (1+gamma)^{s m} <= Z + 1/4.

    Returns ``(padded_hypergraph, certificate)``.
    """
    if q < 1:
        raise HomredError("Potts model needs q >= 1 spins")
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise HomredError("uniformization needs gamma > 0")
    n, m = HG.n, len(HG.hyperedges)
    if m == 0:
        raise HomredError("nothing to uniformize: the hypergraph has no hyperedges")
    t = max(len(f) for f in HG.hyperedges)
    s = s_override if s_override is not None else minimal_uniformize_s(HG, q, gamma, t)
    if s < 1:
        raise HomredError("anchor multiplicity s must be >= 1")

    hyperedges = []
    for j, f in enumerate(HG.hyperedges):
        pad = [n + j * (t - 1) + i for i in range(t - 1)]
        hyperedges.append(tuple(sorted(f)) + tuple(pad[: t - len(f)]))
        anchor = tuple(sorted([f[0]] + pad))
        hyperedges.extend([anchor] * s)
    padded = Hypergraph(n + m * (t - 1), hyperedges)

    cert = ReductionCertificate(
        kind="uniformize",
        inputs={"hypergraph": _hypergraph_to_obj(HG), "q": q, "gamma": gamma, "s": s},
        constants={"t": t, "s": s, "m": m, "scale": (1 + gamma) ** (s * m)},
        slack=Fraction(1, 4),
    )
    return padded, cert


# ---------------------------------------------------------------------------
# cut-to-j3star: minimum 3-terminal cuts via the fixed 58-vertex target


J3STAR_BRANCH_PRODUCT = 6 * 18 * 46  # walk counts at the three distinguished vertices


def minimal_j3star_r(G: Graph, s: int) -> int:
    """Smallest r with (46/40)^r >= 8 * 58^{|V| + s|E| + 7}."""
    rhs = 8 * 58 ** (G.n + s * len(G.edges) + 7)
    r = 1
    p46, p40 = 46, 40
    while p46 < rhs * p40:
        r += 1
        p46 *= 46
        p40 *= 40
    return r


def build_cut_to_j3star(
    cut: CutInstance, s_override: int | None = None, r_override: int | None = None
):
    """Minimum 3-terminal cut count from one unweighted homomorphism count
    into the 58-vertex decorated junction tree.

    The source grows a junction scaffold (centre apex joined to every
    source vertex and to three 2-paths ending at the terminals) plus
    three discriminating gadgets of r pendant branches each, whose walk
    counts single out the intended branch tips; every source edge turns
    into s parallel 2-paths.  Both gadget families are folded: parallel
    2-paths become an entrywise power of the squared adjacency table,
    pendant branches a power under absorption.  The resulting count
    over 2^{s(|E|-b)} * (6*18*46)^r lies within 1/4 above the number of
    minimum cuts.

    Returns ``(instance, certificate)``.
    """
    G = cut.graph
    n, m = G.n, len(G.edges)
    s = s_override if s_override is not None else 3 + m + 2 * n
    if s < 1:
        raise HomredError("path multiplicity s must be >= 1")
    r = r_override if r_override is not None else minimal_j3star_r(G, s)
    if r < 1:
        raise HomredError("gadget multiplicity r must be >= 1")
    b, ncuts = multiterminal_cuts(G, cut.terminals)

    tree = j3star_tree()
    A = adjacency_matrix(tree.graph)
    A2 = matrix_product(A, A)

    ids = iter(range(n, n + 13))
    v_w, v_x0, v_x1, v_y0, v_y1, v_z0, v_z1 = (next(ids) for _ in range(7))
    g_x = next(ids)  # leaf at v_x1, branch multiplicity r
    g_y1, g_y2 = next(ids), next(ids)  # 2-path: v_y1 - g_y2 - g_y1
    g_z1, g_z2, g_z3 = next(ids), next(ids), next(ids)  # 3-path at v_z1

    alpha, beta, gamma_t = cut.terminals
    edges = list(G.edges)
    edges += [(v_w, v_x0), (v_w, v_y0), (v_w, v_z0)]
    edges += [(v_x0, v_x1), (v_y0, v_y1), (v_z0, v_z1)]
    edges += [(v_x1, alpha), (v_y1, beta), (v_z1, gamma_t)]
    edges += [(v_w, v) for v in range(n)]
    edges += [(v_x1, g_x)]
    edges += [(v_y1, g_y2), (g_y2, g_y1)]
    edges += [(v_z1, g_z3), (g_z3, g_z2), (g_z2, g_z1)]

    core = Graph(n + 13, edges)
    inst = EdgeWeightedInstance(
        core,
        tree.graph,
        edge_tables={e: A2 for e in G.edges},
        edge_mult={e: s for e in G.edges},
        vertex_mult={g_x: r, g_y2: r, g_z3: r},
    )
    cert = ReductionCertificate(
        kind="cut-to-j3star",
        inputs={
            "graph": _graph_to_obj(G),
            "terminals": list(cut.terminals),
            "s": s,
            "r": r,
        },
        constants={
            "s": s,
            "r": r,
            "b": b,
            "scale": 2 ** (s * (m - b)) * J3STAR_BRANCH_PRODUCT**r,
        },
        slack=Fraction(1, 4),
        counters={"min_cuts": ncuts},
    )
    return inst, cert


def materialise_cut_to_j3star(cut: CutInstance, s: int, r: int) -> Graph:
    """Explicit version of :func:`build_cut_to_j3star` for small cross-checks.

    Returns the fully materialised source graph: s physical midpoints
    per edge and r physical pendant branches per discriminating gadget.
    Counting plain homomorphisms into the 58-vertex tree agrees with
    the folded instance.
    """
    G = cut.graph
    n = G.n
    edges = []
    nxt = n

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    v_w, v_x0, v_x1, v_y0, v_y1, v_z0, v_z1 = (fresh() for _ in range(7))
    alpha, beta, gamma_t = cut.terminals
    edges += [(v_w, v_x0), (v_w, v_y0), (v_w, v_z0)]
    edges += [(v_x0, v_x1), (v_y0, v_y1), (v_z0, v_z1)]
    edges += [(v_x1, alpha), (v_y1, beta), (v_z1, gamma_t)]
    edges += [(v_w, v) for v in range(n)]
    for u, v in G.edges:
        for _ in range(s):
            mid = fresh()
            edges += [(u, mid), (mid, v)]
    for _ in range(r):
        edges.append((v_x1, fresh()))
    for _ in range(r):
        a, bvert = fresh(), fresh()
        edges += [(v_y1, bvert), (bvert, a)]
    for _ in range(r):
        a, bvert, c = fresh(), fresh(), fresh()
        edges += [(v_z1, c), (c, bvert), (bvert, a)]
    return Graph(nxt, edges)


# ---------------------------------------------------------------------------
# rebuilding, evaluation, verification


def _rebuild(cert: ReductionCertificate):
    """Re-run the recorded construction; returns (built, fresh_certificate)."""
    kind, inp = cert.kind, cert.inputs
    if kind == "cut-to-whom":
        cut = CutInstance(_graph_from_obj(inp["graph"]), tuple(inp["terminals"]))
        return build_cut_to_whom(cut, _graph_from_obj(inp["target"]), s_override=inp["s"])
    if kind == "potts-to-jq":
        return build_potts_to_jq(_graph_from_obj(inp["graph"]), inp["q"], s_override=inp["s"])
    if kind == "jq-to-hyperpotts":
        return build_jq_to_hyperpotts(_graph_from_obj(inp["graph"]), inp["q"], inp["side"])
    if kind == "uniformize":
        return uniformize(
            _hypergraph_from_obj(inp["hypergraph"]),
            inp["q"],
            Fraction(inp["gamma"]),
            s_override=inp["s"],
        )
    if kind == "cut-to-j3star":
        cut = CutInstance(_graph_from_obj(inp["graph"]), tuple(inp["terminals"]))
        return build_cut_to_j3star(cut, s_override=inp["s"], r_override=inp["r"])
    raise HomredError(f"unknown certificate kind {kind!r}")


_BUILDERS = ("cut-to-whom", "potts-to-jq", "jq-to-hyperpotts", "uniformize", "cut-to-j3star")


def _value_of(cert: ReductionCertificate, built) -> Fraction:
    if cert.kind in ("cut-to-whom", "cut-to-j3star"):
        return count_ewhom(built)
    if cert.kind == "potts-to-jq":
        return count_ewhom(built.instance)
    if cert.kind == "jq-to-hyperpotts":
        return count_ewhom(built.restricted)
    if cert.kind == "uniformize":
        return potts_hypergraph(built, cert.inputs["q"], Fraction(cert.inputs["gamma"]))
    raise HomredError(f"unknown certificate kind {cert.kind!r}")


def certificate_value(cert: ReductionCertificate) -> Fraction:
    """The reduction's headline count, recomputed from the inputs."""
    built, _ = _rebuild(cert)
    return _value_of(cert, built)


def certificate_oracle(cert: ReductionCertificate) -> Fraction:
    """Independent ground truth for the quantity the reduction encodes."""
    kind, inp = cert.kind, cert.inputs
    if kind in ("cut-to-whom", "cut-to-j3star"):
        _, ncuts = multiterminal_cuts(_graph_from_obj(inp["graph"]), tuple(inp["terminals"]))
        return Fraction(ncuts)
    if kind == "potts-to-jq":
        return potts_graph(_graph_from_obj(inp["graph"]), inp["q"], 1)
    if kind == "jq-to-hyperpotts":
        built, _ = _rebuild(cert)
        return potts_hypergraph(built.hypergraph, inp["q"], 1)
    if kind == "uniformize":
        return potts_hypergraph(
            _hypergraph_from_obj(inp["hypergraph"]), inp["q"], Fraction(inp["gamma"])
        )
    raise HomredError(f"unknown certificate kind {kind!r}")


def verify_certificate(cert: ReductionCertificate, oracle: Fraction | None = None) -> dict:
    """Rebuild, re-count, and check the sandwich or identity.

    Returns a report with the exact bounds; ``passed`` requires the
    recomputed constants to match the certificate and the scaled value
    to land inside [answer, answer + slack], with the answer recovered
    by flooring when the slack is positive.
    """
    built, fresh = _rebuild(cert)
    stored = {k: _ser(v) for k, v in cert.constants.items()}
    recomputed = {k: _ser(v) for k, v in fresh.constants.items()}
    constants_ok = stored == recomputed and {
        k: _ser(v) for k, v in cert.counters.items()
    } == {k: _ser(v) for k, v in fresh.counters.items()}

    value = _value_of(cert, built)
    truth = certificate_oracle(cert) if oracle is None else Fraction(oracle)
    scale = Fraction(fresh.constants["scale"])
    ratio = value / scale
    lower = truth
    upper = truth + cert.slack
    inside = lower <= ratio <= upper
    report = {
        "kind": cert.kind,
        "constants_ok": constants_ok,
        "value": value,
        "scale": scale,
        "ratio": ratio,
        "lower": lower,
        "upper": upper,
        "slack": cert.slack,
        "passed": constants_ok and inside,
    }
    if cert.slack and truth.denominator == 1:
        report["recovered"] = math.floor(ratio)
        report["passed"] = report["passed"] and report["recovered"] == truth
    if cert.kind == "potts-to-jq":
        typical_ok = Fraction(fresh.counters["typical"]) == scale * truth
        report["typical_ok"] = typical_ok
        report["passed"] = report["passed"] and typical_ok
    return report
