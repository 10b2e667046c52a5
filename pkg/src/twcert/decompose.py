"""Exact desk-scale edge decompositions by deterministic backtracking.

All searches pivot on the lowest-index uncovered edge and try
completions in lexicographic order, so results are reproducible.  The
asymptotic existence theory for dense graphs is deliberately not
consulted: at this scale the search either finds a decomposition or
proves that none exists.
"""

from __future__ import annotations

from itertools import combinations

from .errors import LimitError
from .graphs import Decomposition, Graph, Part, complete_graph, is_divisible

DEFAULT_EDGE_LIMIT = 60

MAX_SPARE_TRIANGLES = 6


def _check_limit(G, limit):
    if G.m > limit:
        raise LimitError(f"graph has {G.m} edges, over the decomposition limit {limit}",
                         code="edges-over-limit")


def _edge_mask(G, pairs):
    mask = 0
    for i, j in pairs:
        mask |= 1 << G.edge_index(i, j)
    return mask


def _triangles(G):
    """All triangles as (vertices, edge mask), sorted by vertex tuple."""
    out = []
    for i, j in G.edges:
        for k in sorted(G.neighbors(i) & G.neighbors(j)):
            if k > j:
                verts = (i, j, k)
                out.append((verts, _edge_mask(G, [(i, j), (i, k), (j, k)])))
    out.sort(key=lambda t: t[0])
    return out


def _cliques(G, size):
    """All size-cliques as sorted vertex tuples, lexicographic order."""
    out = []
    min_deg = size - 1

    def extend(clique, cand):
        if len(clique) == size:
            out.append(tuple(clique))
            return
        for v in sorted(cand):
            extend(clique + [v], {u for u in cand if u > v and u in G.neighbors(v)})

    for v in G.vertices:
        if G.degree(v) >= min_deg:
            extend([v], {u for u in G.neighbors(v) if u > v and G.degree(u) >= min_deg})
    return out


def _clique_edges(verts):
    return tuple((a, b) for a, b in combinations(verts, 2))


def _candidates_by_edge(G, blocks):
    """blocks: list of (payload, mask); bucket them by contained edge index."""
    by_edge = [[] for _ in range(G.m)]
    for payload, mask in blocks:
        rest = mask
        while rest:
            e = (rest & -rest).bit_length() - 1
            by_edge[e].append((payload, mask))
            rest &= rest - 1
    return by_edge


def _cover_exact(G, by_edge):
    """Exact cover of all edges by the bucketed blocks; first solution."""
    chosen = []
    full = (1 << G.m) - 1

    def rec(mask):
        if mask == 0:
            return True
        e = (mask & -mask).bit_length() - 1
        for payload, pm in by_edge[e]:
            if pm & mask == pm:
                chosen.append(payload)
                if rec(mask ^ pm):
                    return True
                chosen.pop()
        return False

    return chosen if rec(full) else None


def triangle_decompose(G, limit=DEFAULT_EDGE_LIMIT):
    """Partition E(G) into triangles, or None when impossible."""
    _check_limit(G, limit)
    if G.m == 0:
        return Decomposition(G, ())
    if not is_divisible(G, complete_graph(3)):
        return None
    by_edge = _candidates_by_edge(G, _triangles(G))
    chosen = _cover_exact(G, by_edge)
    if chosen is None:
        return None
    parts = tuple(Part("triangle", verts, _clique_edges(verts)) for verts in chosen)
    return Decomposition(G, parts)


_CLIQUE_SHAPE = {3: "triangle", 5: "k5", 7: "k7"}


def odd_clique_decompose(G, limit=DEFAULT_EDGE_LIMIT):
    """Partition E(G) into cliques of odd order (3, 5 or 7), or None.

    Every odd clique has even degree at each of its vertices, so any
    vertex of odd degree rules a decomposition out immediately.  The
    main strategy removes |E| mod 3 vertex-disjoint 5-cliques and
    triangle-decomposes the rest; an exhaustive backtracking over all
    three clique sizes runs if that fails.
    """
    _check_limit(G, limit)
    if any(G.degree(v) % 2 for v in G.vertices):
        return None
    if G.m == 0:
        return Decomposition(G, ())

    i = G.m % 3
    if i == 0:
        found = triangle_decompose(G, limit)
        if found is not None:
            return found
    else:
        fives = _cliques(G, 5)
        for combo in combinations(fives, i):
            used = set()
            disjoint = True
            for verts in combo:
                if used & set(verts):
                    disjoint = False
                    break
                used.update(verts)
            if not disjoint:
                continue
            removed = {e for verts in combo for e in _clique_edges(verts)}
            rest = Graph(G.n, [e for e in G.edges if e not in removed])
            sub = triangle_decompose(rest, limit)
            if sub is not None:
                parts = tuple(Part("k5", verts, _clique_edges(verts)) for verts in combo)
                return Decomposition(G, parts + sub.parts)

    blocks = []
    for size in (3, 5, 7):
        for verts in _cliques(G, size):
            blocks.append(((size, verts), _edge_mask(G, _clique_edges(verts))))
    by_edge = _candidates_by_edge(G, blocks)
    chosen = _cover_exact(G, by_edge)
    if chosen is None:
        return None
    parts = tuple(
        Part(_CLIQUE_SHAPE[size], verts, _clique_edges(verts)) for size, verts in chosen
    )
    return Decomposition(G, parts)


def _gadget_embeddings(G):
    """Labelled copies of the 7-edge gadget in G, one per edge set.

    Vertex roles: 2 is the degree-4 hub adjacent to everything, 1 and 3
    are the adjacent pair forming the extra edge, 4 completes the
    triangle (1,2,4) and 5 the triangle (2,3,5).  The gadget's mirror
    symmetry swaps (1,3) and (4,5); duplicates are collapsed keeping
    the lexicographically smallest vertex assignment.
    """
    found = {}
    for v2 in G.vertices:
        if G.degree(v2) < 4:
            continue
        nb2 = G.neighbors(v2)
        for v1 in sorted(nb2):
            for v3 in sorted(nb2 & G.neighbors(v1)):
                for v4 in sorted((nb2 & G.neighbors(v1)) - {v1, v2, v3}):
                    for v5 in sorted((nb2 & G.neighbors(v3)) - {v1, v2, v3, v4}):
                        vmap = (v1, v2, v3, v4, v5)
                        pairs = [
                            (v1, v2), (v1, v3), (v1, v4),
                            (v2, v3), (v2, v4), (v2, v5), (v3, v5),
                        ]
                        mask = _edge_mask(G, pairs)
                        if mask not in found or vmap < found[mask]:
                            found[mask] = vmap

    def indices(mask):
        out = []
        while mask:
            out.append((mask & -mask).bit_length() - 1)
            mask &= mask - 1
        return tuple(out)

    embeddings = [(vmap, mask) for mask, vmap in found.items()]
    embeddings.sort(key=lambda t: (indices(t[1]), t[0]))
    return embeddings


def _h_feasible(edge_count, spare_budget):
    return any(
        (edge_count - 3 * t) >= 0 and (edge_count - 3 * t) % 7 == 0
        for t in range(spare_budget + 1)
    )


def h_decompose(G, limit=DEFAULT_EDGE_LIMIT):
    """Partition E(G) into gadget copies plus at most 6 triangles, or None."""
    _check_limit(G, limit)
    if G.m == 0:
        return Decomposition(G, ())
    if not _h_feasible(G.m, MAX_SPARE_TRIANGLES):
        return None

    h_by_edge = _candidates_by_edge(G, [(("H", vmap), mask) for vmap, mask in _gadget_embeddings(G)])
    tri_by_edge = _candidates_by_edge(
        G, [(("triangle", verts), mask) for verts, mask in _triangles(G)]
    )
    chosen = []

    def rec(mask, budget):
        if mask == 0:
            return True
        if not _h_feasible(mask.bit_count(), budget):
            return False
        e = (mask & -mask).bit_length() - 1
        for payload, pm in h_by_edge[e]:
            if pm & mask == pm:
                chosen.append(payload)
                if rec(mask ^ pm, budget):
                    return True
                chosen.pop()
        if budget:
            for payload, pm in tri_by_edge[e]:
                if pm & mask == pm:
                    chosen.append(payload)
                    if rec(mask ^ pm, budget - 1):
                        return True
                    chosen.pop()
        return False

    if not rec((1 << G.m) - 1, MAX_SPARE_TRIANGLES):
        return None
    parts = []
    for shape, verts in chosen:
        if shape == "H":
            v1, v2, v3, v4, v5 = verts
            edges = tuple(sorted(
                tuple(sorted(p)) for p in [
                    (v1, v2), (v1, v3), (v1, v4),
                    (v2, v3), (v2, v4), (v2, v5), (v3, v5),
                ]
            ))
            parts.append(Part("H", verts, edges))
        else:
            parts.append(Part("triangle", verts, _clique_edges(verts)))
    return Decomposition(G, tuple(parts))
