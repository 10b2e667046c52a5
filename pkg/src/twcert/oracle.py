"""Ground truth for choosability claims: brute-force list weighting.

solve_list exhaustively searches the grid of candidate weightings in
lexicographic order (vertices before edges, each list sorted), pruning
a branch as soon as some edge constraint is fully assigned and
violated.  find_sufficient hunts for a full-degree monomial with
nonzero coefficient and bounded exponents; cn_check then hammers that
monomial's guarantee with seeded random rational lists, where a single
failure would disprove the whole certification chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, LimitError
from .matrices import DEFAULT_PERMANENT_LIMIT, build_matrices, permanent, replicate
from .polynomials import ExponentMap

DEFAULT_GRID_LIMIT = 10 ** 7

_M64 = (1 << 64) - 1


class SplitMix64:
    """Small deterministic 64-bit generator for reproducible trials."""

    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = seed & _M64

    def next64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi]; determinism is the contract here."""
        return lo + self.next64() % (hi - lo + 1)


def random_rational(rng):
    """Exact rational with numerator in [-10^6, 10^6], denominator in [1, 100]."""
    return Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 100))


def frac_to_obj(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def frac_from_obj(obj):
    if isinstance(obj, bool):
        raise InputError(f"not an exact rational: {obj!r}", code="non-exact-number")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {obj!r}: {exc}", code="non-exact-number")
    raise InputError(f"rationals must be integers or 'p/q' strings, got {obj!r}",
                     code="non-exact-number")


class ListAssignment:
    """Finite candidate lists for every vertex and edge.

    Lists are sets: entries are deduplicated and kept sorted so grid
    enumeration order is well defined.
    """

    __slots__ = ("vertex_lists", "edge_lists")

    def __init__(self, vertex_lists, edge_lists):
        self.vertex_lists = {}
        for v, vals in vertex_lists.items():
            vals = tuple(sorted({Fraction(x) for x in vals}))
            if not vals:
                raise InputError(f"empty list for vertex {v}", code="empty-list")
            self.vertex_lists[v] = vals
        self.edge_lists = {}
        for key, vals in edge_lists.items():
            i, j = key
            e = (i, j) if i < j else (j, i)
            vals = tuple(sorted({Fraction(x) for x in vals}))
            if not vals:
                raise InputError(f"empty list for edge {e}", code="empty-list")
            self.edge_lists[e] = vals

    def to_obj(self):
        return {
            "vertices": {str(v): [frac_to_obj(x) for x in vals]
                         for v, vals in sorted(self.vertex_lists.items())},
            "edges": {f"{i}-{j}": [frac_to_obj(x) for x in vals]
                      for (i, j), vals in sorted(self.edge_lists.items())},
        }


@dataclass
class TotalWeighting:
    """A chosen weight for every vertex and edge."""

    vertices: dict
    edges: dict

    def to_obj(self):
        return {
            "vertices": {str(v): frac_to_obj(x) for v, x in sorted(self.vertices.items())},
            "edges": {f"{i}-{j}": frac_to_obj(x) for (i, j), x in sorted(self.edges.items())},
        }


def is_proper(G, w):
    """True iff every edge sees different weight totals at its endpoints.

    The total at vertex v is w(v) plus the weights of the edges at v.
    """
    for v in G.vertices:
        if v not in w.vertices:
            raise InputError(f"no weight assigned to vertex {v}", code="missing-assignment")
    for e in G.edges:
        if e not in w.edges:
            raise InputError(f"no weight assigned to edge {e}", code="missing-assignment")
    totals = {
        v: w.vertices[v] + sum((w.edges[G.edges[k]] for k in G.incident(v)), Fraction(0))
        for v in G.vertices
    }
    return all(totals[i] != totals[j] for i, j in G.edges)


def solve_list(G, L, grid_limit=DEFAULT_GRID_LIMIT):
    """Lexicographically first proper weighting in the grid, or None.

    Iterates vertices 1..n then edges in canonical order, values in
    sorted order.  A branch is cut once an edge constraint has all of
    its weights assigned and the two endpoint totals are equal, so the
    search is exhaustive over the rest of the grid.
    """
    for v in G.vertices:
        if v not in L.vertex_lists:
            raise InputError(f"no list for vertex {v}", code="missing-list")
    for e in G.edges:
        if e not in L.edge_lists:
            raise InputError(f"no list for edge {e}", code="missing-list")
    n, m = G.n, G.m
    values = [L.vertex_lists[v] for v in G.vertices] + [L.edge_lists[e] for e in G.edges]
    size = math.prod(len(vals) for vals in values)
    if size > grid_limit:
        raise LimitError(f"grid has {size} points, over the limit {grid_limit}",
                         code="grid-over-limit")

    # Slot order: vertex v at v-1, edge k at n+k.  Each edge constraint
    # becomes checkable at the latest slot among its two endpoint
    # weights and all incident edge weights.
    ready_at = [[] for _ in range(n + m)]
    for k, (i, j) in enumerate(G.edges):
        involved = [i - 1, j - 1]
        involved += [n + t for t in G.incident(i)]
        involved += [n + t for t in G.incident(j)]
        ready_at[max(involved)].append(k)

    assign = [None] * (n + m)

    def total_at(v):
        return assign[v - 1] + sum((assign[n + t] for t in G.incident(v)), Fraction(0))

    def ok(depth):
        for k in ready_at[depth]:
            i, j = G.edges[k]
            if total_at(i) == total_at(j):
                return False
        return True

    def rec(depth):
        if depth == n + m:
            return True
        for val in values[depth]:
            assign[depth] = val
            if ok(depth) and rec(depth + 1):
                return True
        assign[depth] = None
        return False

    if not rec(0):
        return None
    return TotalWeighting(
        vertices={v: assign[v - 1] for v in G.vertices},
        edges={e: assign[n + k] for k, e in enumerate(G.edges)},
    )


def _bounded_desc(total, parts, bound):
    """Dense tuples with `parts` entries <= bound summing to `total`,
    in descending lexicographic order."""
    prefix = []

    def rec(pos, remaining):
        if pos == parts:
            if remaining == 0:
                yield tuple(prefix)
            return
        hi = min(bound, remaining)
        lo = max(0, remaining - bound * (parts - pos - 1))
        for v in range(hi, lo - 1, -1):
            prefix.append(v)
            yield from rec(pos + 1, remaining - v)
            prefix.pop()

    return rec(0, total)


def find_sufficient(G, b, permanent_limit=DEFAULT_PERMANENT_LIMIT):
    """First full-degree exponent map with entries <= b and nonzero
    coefficient in G's properness polynomial, or None.

    Maps are tried in descending lexicographic order over the canonical
    edge indices, i.e. greedily loading early edges first.
    """
    if not isinstance(b, int) or b < 1:
        raise InputError(f"bound must be a positive integer, got {b!r}", code="bad-bound")
    m = G.m
    if m > permanent_limit:
        raise LimitError(f"{m} edges exceed the permanent side limit {permanent_limit}",
                         code="side-over-limit")
    if m == 0:
        return ExponentMap()
    _, _, C = build_matrices(G)
    for dense in _bounded_desc(m, m, b):
        K = ExponentMap.from_dense(dense)
        if permanent(replicate(C, K, "columns"), permanent_limit) != 0:
            return K
    return None


@dataclass
class CnReport:
    """Outcome of repeated randomized list-weighting trials."""

    graph: object
    exponents: ExponentMap
    trials: int
    seed: int
    failures: int
    results: list

    def to_obj(self):
        return {
            "graph": self.graph.to_obj(),
            "K": {f"{i}-{j}": self.exponents[k] for k, (i, j) in enumerate(self.graph.edges)},
            "trials": self.trials,
            "seed": self.seed,
            "failures": self.failures,
            "results": self.results,
        }


def cn_check(G, K, trials, seed, grid_limit=DEFAULT_GRID_LIMIT,
             permanent_limit=DEFAULT_PERMANENT_LIMIT):
    """Stress-test the list-weighting guarantee of a nonzero coefficient.

    K must index a full-degree monomial of G's properness polynomial
    with nonzero coefficient (verified here via the permanent).  Each
    trial draws one random rational per vertex and K(e)+1 distinct
    random rationals per edge, then solves exhaustively; every trial
    must succeed, so the report's failure count is expected to be 0.
    """
    if not isinstance(trials, int) or trials < 0:
        raise InputError(f"trial count must be a non-negative integer, got {trials!r}",
                         code="bad-trials")
    from .matrices import coe_via_permanent

    if coe_via_permanent(G, K, permanent_limit) == 0:
        raise InputError("coefficient of the target monomial is zero; nothing is guaranteed",
                         code="zero-coefficient")
    rng = SplitMix64(seed)
    results = []
    failures = 0
    for _ in range(trials):
        vertex_lists = {v: (random_rational(rng),) for v in G.vertices}
        edge_lists = {}
        for k, e in enumerate(G.edges):
            want = K[k] + 1
            vals = set()
            while len(vals) < want:
                vals.add(random_rational(rng))
            edge_lists[e] = tuple(sorted(vals))
        L = ListAssignment(vertex_lists, edge_lists)
        w = solve_list(G, L, grid_limit)
        if w is None:
            failures += 1
        results.append({
            "lists": L.to_obj(),
            "weighting": None if w is None else w.to_obj(),
        })
    return CnReport(graph=G, exponents=K, trials=trials, seed=seed,
                    failures=failures, results=results)
