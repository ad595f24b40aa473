"""Boolean implication CSPs: exact (weighted) solution counting.

An instance has variables ``0..nvars-1``, implication constraints
``imp(x, y)`` meaning ``tau(x) <= tau(y)``, and unary pins to 0 or 1.
Weighted instances attach a nonnegative rational pair ``(g0, g1)`` to
every variable; the weight of a satisfying assignment is the product of
the matching entries and :func:`count_wcsp` sums these weights exactly.

The counter propagates pins, collapses strongly connected components of
the implication digraph (variables in a cycle of implications are
equal), splits into weakly connected parts, and then branches on a
high-degree variable: setting it to 1 fixes its forward closure, setting
it to 0 fixes its backward closure, and both closures detach cleanly
from the rest.  Results are memoised per active variable set.

:func:`compile_weight_gadget` removes the weights again: each variable
grows two chains of small implication blocks whose standalone solution
counts realise the binary digits of its two weight values, so that the
plain solution count of the compiled instance equals the weighted count
of the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import HomredError


def _num(x):
    f = Fraction(x)
    if f < 0:
        raise HomredError("weights must be nonnegative")
    return int(f) if f.denominator == 1 else f


def _normalise_imps(nvars: int, imps) -> tuple[tuple[int, int], ...]:
    seen = set()
    for x, y in imps:
        if not (0 <= x < nvars and 0 <= y < nvars):
            raise HomredError(f"implication ({x},{y}) out of range")
        if x == y:
            raise HomredError(f"implication from variable {x} to itself")
        seen.add((x, y))
    return tuple(sorted(seen))


def _check_pins(nvars: int, pins) -> frozenset[int]:
    pins = frozenset(pins)
    for x in pins:
        if not 0 <= x < nvars:
            raise HomredError(f"pin on out-of-range variable {x}")
    return pins


@dataclass
class CspInstance:
    nvars: int
    imps: tuple[tuple[int, int], ...] = ()
    pins0: frozenset[int] = frozenset()
    pins1: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.nvars < 0:
            raise HomredError("variable count must be nonnegative")
        self.imps = _normalise_imps(self.nvars, self.imps)
        self.pins0 = _check_pins(self.nvars, self.pins0)
        self.pins1 = _check_pins(self.nvars, self.pins1)

    def with_weights(self, weights) -> "WeightedCspInstance":
        return WeightedCspInstance(self.nvars, self.imps, self.pins0, self.pins1, weights)


@dataclass
class WeightedCspInstance:
    nvars: int
    imps: tuple[tuple[int, int], ...] = ()
    pins0: frozenset[int] = frozenset()
    pins1: frozenset[int] = frozenset()
    weights: tuple = ()  # per variable: (g0, g1)

    def __post_init__(self):
        if self.nvars < 0:
            raise HomredError("variable count must be nonnegative")
        self.imps = _normalise_imps(self.nvars, self.imps)
        self.pins0 = _check_pins(self.nvars, self.pins0)
        self.pins1 = _check_pins(self.nvars, self.pins1)
        if not self.weights:
            self.weights = ((1, 1),) * self.nvars
        if len(self.weights) != self.nvars:
            raise HomredError("need one weight pair per variable")
        self.weights = tuple((_num(g0), _num(g1)) for g0, g1 in self.weights)

    def unweighted(self) -> CspInstance:
        return CspInstance(self.nvars, self.imps, self.pins0, self.pins1)


def _closure(start, adj, allowed) -> set[int]:
    out = set(start)
    stack = list(start)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in allowed and v not in out:
                out.add(v)
                stack.append(v)
    return out


def _sccs(nodes: list[int], succ) -> list[list[int]]:
    """Tarjan's algorithm, iterative; returns components over ``nodes``."""
    index = {}
    low = {}
    on_stack = set()
    stack: list[int] = []
    out = []
    counter = 0
    nodeset = set(nodes)
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter([v for v in succ[root] if v in nodeset]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            u, it = work[-1]
            advanced = False
            for v in it:
                if v not in index:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack.add(v)
                    work.append((v, iter([t for t in succ[v] if t in nodeset])))
                    advanced = True
                    break
                if v in on_stack:
                    low[u] = min(low[u], index[v])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
            if low[u] == index[u]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.remove(w)
                    comp.append(w)
                    if w == u:
                        break
                out.append(comp)
    return out


def count_wcsp(inst: WeightedCspInstance) -> Fraction:
    """Sum of assignment weights over all satisfying assignments."""
    n = inst.nvars
    succ = [[] for _ in range(n)]
    pred = [[] for _ in range(n)]
    for x, y in inst.imps:
        succ[x].append(y)
        pred[y].append(x)

    # Pin propagation: 1 flows forward, 0 flows backward.
    val: list[int | None] = [None] * n
    everything = set(range(n))
    ones = _closure(inst.pins1, succ, everything)
    zeros = _closure(inst.pins0, pred, everything)
    if ones & zeros:
        return Fraction(0)
    scalar = 1
    for x in ones:
        val[x] = 1
        scalar *= inst.weights[x][1]
    for x in zeros:
        val[x] = 0
        scalar *= inst.weights[x][0]
    if not scalar:
        return Fraction(0)

    free = [x for x in range(n) if val[x] is None]

    # Collapse implication cycles: every variable in an SCC is equal.
    comps = _sccs(free, succ)
    cid = {}
    for i, comp in enumerate(comps):
        for x in comp:
            cid[x] = i
    g0 = []
    g1 = []
    for comp in comps:
        p0 = p1 = 1
        for x in comp:
            p0 *= inst.weights[x][0]
            p1 *= inst.weights[x][1]
        g0.append(p0)
        g1.append(p1)
    k = len(comps)
    csucc = [set() for _ in range(k)]
    cpred = [set() for _ in range(k)]
    for x in free:
        for y in succ[x]:
            if val[y] is None and cid[x] != cid[y]:
                csucc[cid[x]].add(cid[y])
                cpred[cid[y]].add(cid[x])
    cboth = [csucc[i] | cpred[i] for i in range(k)]

    memo: dict[frozenset[int], object] = {}

    def weak_components(active: frozenset[int]) -> list[frozenset[int]]:
        left = set(active)
        out = []
        while left:
            root = next(iter(left))
            comp = _closure([root], cboth, left)
            left -= comp
            out.append(frozenset(comp))
        return out

    def solve(active: frozenset[int]):
        if not active:
            return 1
        got = memo.get(active)
        if got is not None:
            return got
        parts = weak_components(active)
        if len(parts) > 1:
            result = 1
            for part in parts:
                result *= solve(part)
            memo[active] = result
            return result
        if all(not (csucc[v] & active) for v in active):
            result = 1
            for v in active:
                result *= g0[v] + g1[v]
            memo[active] = result
            return result
        v = min(active, key=lambda u: (-len(cboth[u] & active), u))
        fwd = frozenset(_closure([v], csucc, active))
        bwd = frozenset(_closure([v], cpred, active))
        hi = 1
        for u in fwd:
            hi *= g1[u]
        lo = 1
        for u in bwd:
            lo *= g0[u]
        result = 0
        if hi:
            result += hi * solve(active - fwd)
        if lo:
            result += lo * solve(active - bwd)
        memo[active] = result
        return result

    return Fraction(scalar * solve(frozenset(range(k))))


def count_csp(inst: CspInstance) -> int:
    """Number of satisfying assignments."""
    z = count_wcsp(inst.with_weights(()))
    assert z.denominator == 1
    return int(z)


def ceil_lg(n: int) -> int:
    """Smallest k with 2^k >= n, for n >= 1."""
    if n < 1:
        raise HomredError("ceil_lg needs a positive integer")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class BitExpansion:
    """Binary digit data driving one variable's pair of gadget chains.

    Branch 0 realises the weight of the variable being 1, branch 1 the
    weight of it being 0; ``branch_bits[b]`` lists the set bit positions
    of the corresponding value, ascending.
    """

    k: int
    branch_bits: tuple[tuple[int, ...], tuple[int, ...]]

    @classmethod
    def from_weights(cls, g0: int, g1: int) -> "BitExpansion":
        if g0 < 1 or g1 < 1:
            raise HomredError("bit expansion needs positive integer weights")
        k = max(ceil_lg(g0), ceil_lg(g1))
        bits = lambda v: tuple(i for i in range(v.bit_length()) if v >> i & 1)
        return cls(k, (bits(g1), bits(g0)))

    def min_bit(self, b: int) -> int:
        return self.branch_bits[b][0]

    def max_bit(self, b: int) -> int:
        return self.branch_bits[b][-1]

    def adjacent_pairs(self, b: int):
        bits = self.branch_bits[b]
        return list(zip(bits, bits[1:]))


def compile_weight_gadget(inst: WeightedCspInstance):
    """Rewrite integer weights into implication gadget chains.

    Returns ``(compiled, roles)`` where ``compiled`` is an unweighted
    instance with ``count_csp(compiled) == count_wcsp(inst)``, and
    ``roles`` maps every variable to its meaning: ``("orig", x)`` for
    the original variables (ids preserved), and ``("L", x, b, i)``,
    ``("mid", x, b, i, j)``, ``("R", x, b, i)`` for the gadget chains.

    Each set bit i of a branch value contributes a block of 2 + i
    variables with 2^i + 2 standalone solutions; consecutive blocks are
    glued end-to-end by bidirectional implications, the far end of each
    chain is pinned, and the near end is identified with the original
    variable.  All weights must be positive integers (run
    :func:`clear_denominators` first when they are fractions).
    """
    for x, (w0, w1) in enumerate(inst.weights):
        if not isinstance(w0, int) or not isinstance(w1, int) or w0 < 1 or w1 < 1:
            raise HomredError(
                f"variable {x} has weights ({w0},{w1}); the gadget needs positive integers"
            )

    imps = list(inst.imps)
    pins0 = set(inst.pins0)
    pins1 = set(inst.pins1)
    roles: dict[int, tuple] = {x: ("orig", x) for x in range(inst.nvars)}
    nxt = inst.nvars

    def new(role: tuple) -> int:
        nonlocal nxt
        roles[nxt] = role
        nxt += 1
        return nxt - 1

    for x, (w0, w1) in enumerate(inst.weights):
        exp = BitExpansion.from_weights(w0, w1)
        for b in (0, 1):
            ends: dict[int, tuple[int, int]] = {}
            for i in exp.branch_bits[b]:
                left = new(("L", x, b, i))
                mids = [new(("mid", x, b, i, j)) for j in range(1, i + 1)]
                right = new(("R", x, b, i))
                for m in mids:
                    imps.append((left, m))
                    imps.append((m, right))
                if not mids:
                    imps.append((left, right))
                ends[i] = (left, right)
            for i, j in exp.adjacent_pairs(b):
                imps.append((ends[i][1], ends[j][0]))
                imps.append((ends[j][0], ends[i][1]))
            if b == 0:
                pins0.add(ends[exp.min_bit(b)][0])
                anchor = ends[exp.max_bit(b)][1]
            else:
                pins1.add(ends[exp.max_bit(b)][1])
                anchor = ends[exp.min_bit(b)][0]
            imps.append((x, anchor))
            imps.append((anchor, x))

    return CspInstance(nxt, imps, pins0, pins1), roles


def clear_denominators(inst: WeightedCspInstance):
    """Scale each variable's weight pair to integers.

    Returns ``(scaled, scale)`` with
    ``count_wcsp(inst) == count_wcsp(scaled) / scale``.
    """
    new_weights = []
    scale = 1
    for g0, g1 in inst.weights:
        g0, g1 = Fraction(g0), Fraction(g1)
        d = lcm(g0.denominator, g1.denominator)
        scale *= d
        new_weights.append((g0 * d, g1 * d))
    scaled = WeightedCspInstance(
        inst.nvars, inst.imps, inst.pins0, inst.pins1, tuple(new_weights)
    )
    return scaled, scale
