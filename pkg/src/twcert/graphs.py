"""Canonical graphs, degree predicates, and edge-decomposition records.

Vertices are 1..n.  Edges are unordered pairs stored as (i, j) with
i < j, sorted lexicographically; the position of an edge in that order
is its *index*, and every matrix row and exponent map elsewhere in the
package is keyed by it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import reduce

from .errors import InputError


class Graph:
    """Simple undirected graph with a fixed canonical edge order."""

    __slots__ = ("n", "edges", "_index", "_neighbors", "_incident")

    def __init__(self, n, edges=()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InputError(
                f"vertex count must be a non-negative integer, got {n!r}",
                code="bad-vertex-count",
            )
        canon = []
        for pair in edges:
            try:
                i, j = pair
            except (TypeError, ValueError):
                raise InputError(f"edge must be a pair, got {pair!r}", code="malformed-edge")
            if not isinstance(i, int) or not isinstance(j, int) or isinstance(i, bool) or isinstance(j, bool):
                raise InputError(f"edge endpoints must be integers, got {pair!r}", code="malformed-edge")
            if i == j:
                raise InputError(f"loop edge ({i},{j}) not allowed", code="loop-edge")
            if i > j:
                i, j = j, i
            if i < 1 or j > n:
                raise InputError(
                    f"edge ({i},{j}) has an endpoint outside 1..{n}",
                    code="endpoint-out-of-range",
                )
            canon.append((i, j))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise InputError(f"duplicate edge {a}", code="duplicate-edge")
        self.n = n
        self.edges = tuple(canon)
        self._index = {e: k for k, e in enumerate(self.edges)}
        nbrs = [set() for _ in range(n + 1)]
        inc = [[] for _ in range(n + 1)]
        for k, (i, j) in enumerate(self.edges):
            nbrs[i].add(j)
            nbrs[j].add(i)
            inc[i].append(k)
            inc[j].append(k)
        self._neighbors = tuple(frozenset(s) for s in nbrs)
        self._incident = tuple(tuple(ks) for ks in inc)

    @property
    def m(self):
        return len(self.edges)

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def degree(self, v):
        return len(self._incident[v])

    def neighbors(self, v):
        return self._neighbors[v]

    def incident(self, v):
        """Indices of the edges incident to v, in canonical order."""
        return self._incident[v]

    def has_edge(self, i, j):
        if i > j:
            i, j = j, i
        return (i, j) in self._index

    def edge_index(self, i, j):
        if i > j:
            i, j = j, i
        try:
            return self._index[(i, j)]
        except KeyError:
            raise InputError(f"({i},{j}) is not an edge of this graph", code="unknown-edge")

    def to_obj(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_obj(obj):
    """Build a Graph from a decoded graph-file object {"n":…, "edges":…}."""
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise InputError('graph object must have keys "n" and "edges"', code="malformed-graph")
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise InputError('"edges" must be a list of pairs', code="malformed-graph")
    return Graph(obj["n"], edges)


def parse_graph(text):
    """Parse the JSON graph-file format; canonicalizes edge order."""
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise InputError(f"not valid JSON: {exc}", code="malformed-graph")
    return graph_from_obj(obj)


def serialize_graph(G):
    """Canonical single-line JSON; parse_graph(serialize_graph(G)) == G."""
    return json.dumps(G.to_obj())


def complete_graph(n):
    if not isinstance(n, int) or n < 1:
        raise InputError(f"complete graph order must be a positive integer, got {n!r}", code="bad-order")
    return Graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def graph_gcd(G):
    """gcd of all positive vertex degrees; 0 when every vertex is isolated."""
    if G.n < 1:
        raise InputError("graph has no vertices", code="empty-graph")
    return reduce(math.gcd, (G.degree(v) for v in G.vertices if G.degree(v)), 0)


def is_divisible(G, F):
    """Necessary edge/degree condition for decomposing G into copies of F."""
    if F.m == 0:
        raise InputError("divisor graph must have at least one edge", code="empty-divisor")
    return G.m % F.m == 0 and graph_gcd(G) % graph_gcd(F) == 0


def is_eulerian(G):
    """All degrees even and one component once isolated vertices are ignored.

    An edgeless graph is trivially Eulerian.
    """
    if any(G.degree(v) % 2 for v in G.vertices):
        return False
    active = [v for v in G.vertices if G.degree(v)]
    if not active:
        return True
    seen = {active[0]}
    stack = [active[0]]
    while stack:
        v = stack.pop()
        for u in G.neighbors(v):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(active)


def is_nice(G):
    """True iff no connected component is a single edge."""
    return not any(G.degree(i) == 1 and G.degree(j) == 1 for i, j in G.edges)


@dataclass(frozen=True)
class Part:
    """One block of an edge decomposition.

    For shape "H" the vertices tuple lists the images of the gadget's
    five labelled vertices in label order; for the clique shapes it is
    sorted ascending.
    """

    shape: str
    vertices: tuple
    edges: tuple

    def to_obj(self):
        return {
            "shape": self.shape,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class Decomposition:
    """A list of edge-disjoint parts covering the host's edge set."""

    host: Graph
    parts: tuple

    def is_partition(self):
        covered = [e for p in self.parts for e in p.edges]
        return len(covered) == len(set(covered)) and set(covered) == set(self.host.edges)

    def to_obj(self):
        return {"parts": [p.to_obj() for p in self.parts]}
