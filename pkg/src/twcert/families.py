"""Path covering families and choosability certificates.

A path covering family assigns to each edge (i, j) of a host graph an
even-length path from i to j.  Substituting the plus-binomial
(x_a + x_b) for each step edge of the path and alternating signs
telescopes to x_i - x_j, so the product of these alternating sums over
all edges reproduces the host's vandermonde product while using each
edge at most load-many times.  A family whose load is bounded by b
therefore certifies that the host is algebraic (1, b+1)-choosable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, LimitError
from .graphs import Graph, Decomposition, complete_graph
from .polynomials import ExponentMap, SparsePoly, vandermonde_poly

DEFAULT_SYMBOLIC_EDGE_CAP = 21

CHECK_PASS = "pass"
CHECK_FAIL = "fail"
CHECK_SKIPPED = "skipped"


class PathFamily:
    """One vertex path per host edge, keyed by the canonical edge pair.

    The constructor only canonicalizes; whether the family is actually
    well-formed (one even-length path per edge, endpoints matching,
    steps adjacent in the host) is judged by certify, so malformed
    user-supplied families can still be represented and rejected.
    """

    __slots__ = ("host", "paths")

    def __init__(self, host, paths):
        canon = {}
        for key, path in paths.items():
            i, j = key
            e = (i, j) if i < j else (j, i)
            if e in canon:
                raise InputError(f"two paths supplied for edge {e}", code="duplicate-path")
            canon[e] = tuple(path)
        self.host = host
        self.paths = dict(sorted(canon.items()))

    def items(self):
        return self.paths.items()

    def path(self, i, j):
        if i > j:
            i, j = j, i
        return self.paths[(i, j)]

    def to_obj(self):
        return {f"{i}-{j}": list(p) for (i, j), p in self.paths.items()}

    def __eq__(self, other):
        return (
            isinstance(other, PathFamily)
            and self.host == other.host
            and self.paths == other.paths
        )

    def __repr__(self):
        return f"PathFamily({len(self.paths)} paths on {self.host!r})"


def odd_clique_family(n):
    """The length-2 midpoint family on the complete graph of odd order n.

    The middle vertex of the path for edge (i, j) is the average of i
    and j when j - i is even, and the average shifted halfway around
    the n-cycle otherwise; residue 0 mod n names vertex n.  Every edge
    of the clique ends up in exactly two paths.
    """
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise InputError(f"order must be an odd integer >= 3, got {n!r}", code="bad-order")
    host = complete_graph(n)
    paths = {}
    for i, j in host.edges:
        d = j - i
        if d % 2 == 0:
            t = i + d // 2
        else:
            t = (j + (n - d) // 2) % n
            if t == 0:
                t = n
        assert t != i and t != j
        paths[(i, j)] = (i, t, j)
    return PathFamily(host, paths)


def family_load(F):
    """For each host edge index, the number of paths whose edge set uses it."""
    counts = {}
    for _, path in F.items():
        step_edges = set()
        for a, b in zip(path, path[1:]):
            if a > b:
                a, b = b, a
            step_edges.add((a, b))
        for e in step_edges:
            if F.host.has_edge(*e):
                k = F.host.edge_index(*e)
                counts[k] = counts.get(k, 0) + 1
    return ExponentMap(counts)


def path_expansion(path):
    """Alternating signed edge combination of an even-length path.

    Returns ((sign, (a, b)), ...) with sign = (-1)^l for step l, edges
    canonical.  Substituting (x_a + x_b) for each edge telescopes to
    x_first - x_last.
    """
    path = tuple(path)
    if len(path) < 3 or len(path) % 2 == 0:
        raise InputError(f"path must have even length >= 2, got {len(path) - 1} steps",
                         code="odd-length-path")
    out = []
    sign = 1
    for a, b in zip(path, path[1:]):
        if a > b:
            a, b = b, a
        out.append((sign, (a, b)))
        sign = -sign
    return tuple(out)


def _expansion_poly(path, nvars):
    """The alternating sum of plus-binomials of a path, over vertex variables."""
    P = SparsePoly.zero(nvars)
    for sign, (a, b) in path_expansion(path):
        binom = SparsePoly._raw(
            nvars,
            {ExponentMap._raw(((a - 1, 1),)): sign, ExponentMap._raw(((b - 1, 1),)): sign},
        )
        P = P + binom
    return P


def _relabel_paths(paths, mapping):
    out = {}
    for (i, j), path in paths.items():
        a, b = mapping[i], mapping[j]
        e = (a, b) if a < b else (b, a)
        out[e] = tuple(mapping[v] for v in path)
    return out


def h_gadget():
    """The 5-vertex, 7-edge gadget and its canonical path covering family.

    Two edge-disjoint triangles (1,2,4) and (2,3,5) carry relabelled
    triangle families; the remaining edge (1,3) gets the path (1,2,3).
    The load is 3 on edges (1,2) and (2,3), 2 on the other four
    triangle edges, and 0 on (1,3).
    """
    host = Graph(5, [(1, 2), (1, 4), (2, 4), (2, 3), (2, 5), (3, 5), (1, 3)])
    base = odd_clique_family(3)
    paths = {}
    for tri in ((1, 2, 4), (2, 3, 5)):
        paths.update(_relabel_paths(base.paths, dict(zip((1, 2, 3), tri))))
    paths[(1, 3)] = (1, 2, 3)
    return host, PathFamily(host, paths)


def merge_families(decomp, families):
    """Union family of a decomposition whose parts carry their own families.

    families[i] must cover exactly the edges of parts[i], and the parts
    must partition the host's edge set.
    """
    if len(families) != len(decomp.parts):
        raise InputError(
            f"{len(decomp.parts)} parts but {len(families)} families",
            code="part-family-mismatch",
        )
    if not decomp.is_partition():
        raise InputError("parts do not partition the host's edges", code="non-partition")
    merged = {}
    for part, fam in zip(decomp.parts, families):
        if set(fam.paths) != set(part.edges):
            raise InputError(
                f"family does not cover exactly the edges of its {part.shape} part",
                code="part-family-mismatch",
            )
        merged.update(fam.paths)
    return PathFamily(decomp.host, merged)


def family_for_part(part, n):
    """Canonical family for a decomposition part, relabelled into the host.

    Clique parts use the odd-order midpoint family with the part's
    vertices taken in increasing order; "H" parts relabel the gadget
    family through the stored embedding order.
    """
    if part.shape == "triangle":
        base, labels = odd_clique_family(3), (1, 2, 3)
        image = tuple(sorted(part.vertices))
    elif part.shape == "k5":
        base, labels = odd_clique_family(5), (1, 2, 3, 4, 5)
        image = tuple(sorted(part.vertices))
    elif part.shape == "k7":
        base, labels = odd_clique_family(7), (1, 2, 3, 4, 5, 6, 7)
        image = tuple(sorted(part.vertices))
    elif part.shape == "H":
        base_host, base = h_gadget()
        labels = (1, 2, 3, 4, 5)
        image = tuple(part.vertices)
    else:
        raise InputError(f"no canonical family for part shape {part.shape!r}",
                         code="unknown-shape")
    paths = _relabel_paths(base.paths, dict(zip(labels, image)))
    host = Graph(n, part.edges)
    if set(paths) != set(host.edges):
        raise InputError(f"part edges do not match a {part.shape} on {image}",
                         code="shape-mismatch")
    return PathFamily(host, paths)


@dataclass
class Certificate:
    """Machine-checkable record of a certification run."""

    host: Graph
    family: PathFamily
    load: ExponentMap
    bound: int
    mode: str
    checks: dict
    accepted: bool
    reason: str | None
    conclusion: str

    def to_obj(self):
        load_obj = {
            f"{i}-{j}": self.load[k]
            for k, (i, j) in enumerate(self.host.edges)
        }
        return {
            "graph": self.host.to_obj(),
            "b": self.bound,
            "paths": self.family.to_obj(),
            "load": load_obj,
            "accepted": self.accepted,
            "mode": self.mode,
            "conclusion": self.conclusion,
            "checks": dict(self.checks),
            "reason": self.reason,
        }


def _family_defect(G, family):
    """First structural problem of the family against its host, or None."""
    have = set(family.paths)
    want = set(G.edges)
    for e in sorted(want - have):
        return f"no path for edge {e}"
    for e in sorted(have - want):
        return f"path for {e}, which is not an edge of the host"
    for e, path in family.items():
        if len(path) < 3 or len(path) % 2 == 0:
            return f"path for edge {e} does not have even length >= 2"
        if any(not isinstance(v, int) or not 1 <= v <= G.n for v in path):
            return f"path for edge {e} leaves the vertex range"
        if (path[0], path[-1]) != e:
            return f"path for edge {e} does not run from {e[0]} to {e[1]}"
        if len(set(path)) != len(path):
            return f"path for edge {e} repeats a vertex"
        for a, b in zip(path, path[1:]):
            if not G.has_edge(a, b):
                return f"path for edge {e} uses the non-edge ({min(a, b)},{max(a, b)})"
    return None


def certify(G, family, b, mode="auto", symbolic_edge_cap=DEFAULT_SYMBOLIC_EDGE_CAP):
    """Check a path covering family and issue a Certificate.

    Structural mode verifies the family's shape, the per-path
    telescoping identity, and that the load is at most b.  Symbolic
    mode additionally expands the product of the per-path alternating
    sums and compares it with the host's vandermonde product; a
    mismatch there signals an implementation bug and is recorded as the
    rejection reason.  mode="auto" picks symbolic when the host has at
    most ``symbolic_edge_cap`` edges.
    """
    if not isinstance(b, int) or b < 1:
        raise InputError(f"bound must be a positive integer, got {b!r}", code="bad-bound")
    if family.host != G:
        raise InputError("family is not hosted on the given graph", code="host-mismatch")
    if mode not in ("auto", "structural", "symbolic"):
        raise InputError(f"unknown mode {mode!r}", code="bad-mode")
    if mode == "symbolic" and G.m > symbolic_edge_cap:
        raise LimitError(
            f"symbolic verification is capped at {symbolic_edge_cap} edges (host has {G.m})",
            code="symbolic-cap-exceeded",
        )
    resolved = mode
    if mode == "auto":
        resolved = "symbolic" if G.m <= symbolic_edge_cap else "structural"

    checks = {
        "structural": CHECK_SKIPPED,
        "load": CHECK_SKIPPED,
        "path_identity": CHECK_SKIPPED,
        "symbolic_product": CHECK_SKIPPED,
    }
    reason = None
    load = ExponentMap()

    defect = _family_defect(G, family)
    if defect is not None:
        checks["structural"] = CHECK_FAIL
        reason = defect
    else:
        checks["structural"] = CHECK_PASS
        load = family_load(family)
        if load.max_entry() <= b:
            checks["load"] = CHECK_PASS
        else:
            checks["load"] = CHECK_FAIL
            worst = max(range(G.m), key=lambda k: load[k])
            reason = f"load {load[worst]} on edge {G.edges[worst]} exceeds b={b}"
        if reason is None:
            checks["path_identity"] = CHECK_PASS
            for (i, j), path in family.items():
                expect = SparsePoly._raw(
                    G.n,
                    {ExponentMap._raw(((i - 1, 1),)): 1, ExponentMap._raw(((j - 1, 1),)): -1},
                )
                if _expansion_poly(path, G.n) != expect:
                    checks["path_identity"] = CHECK_FAIL
                    reason = f"alternating sum for edge ({i},{j}) does not telescope"
                    break
        if reason is None and resolved == "symbolic":
            product = SparsePoly.constant(G.n, 1)
            for _, path in family.items():
                product = product * _expansion_poly(path, G.n)
            if product == vandermonde_poly(G):
                checks["symbolic_product"] = CHECK_PASS
            else:
                checks["symbolic_product"] = CHECK_FAIL
                reason = "expanded product differs from the vandermonde product"

    accepted = reason is None
    conclusion = f"algebraic (1,{b + 1})-choosable" if accepted else f"rejected: {reason}"
    return Certificate(
        host=G,
        family=family,
        load=load,
        bound=b,
        mode=resolved,
        checks=checks,
        accepted=accepted,
        reason=reason,
        conclusion=conclusion,
    )


def pipeline(G, into="odd-cliques", b=None, mode="auto",
             edge_limit=None, symbolic_edge_cap=DEFAULT_SYMBOLIC_EDGE_CAP):
    """Decompose G, attach canonical families, merge, and certify.

    Returns (Decomposition, Certificate), or None when no decomposition
    of the requested kind exists.  The default bound is 2 for clique
    decompositions and 3 for gadget decompositions.
    """
    from . import decompose as _dec

    searchers = {
        "triangles": _dec.triangle_decompose,
        "odd-cliques": _dec.odd_clique_decompose,
        "h": _dec.h_decompose,
    }
    if into not in searchers:
        raise InputError(f"unknown decomposition kind {into!r}", code="bad-decomposition-kind")
    kwargs = {} if edge_limit is None else {"limit": edge_limit}
    decomp = searchers[into](G, **kwargs)
    if decomp is None:
        return None
    if b is None:
        b = 3 if into == "h" else 2
    families = [family_for_part(p, G.n) for p in decomp.parts]
    merged = merge_families(decomp, families)
    cert = certify(G, merged, b, mode=mode, symbolic_edge_cap=symbolic_edge_cap)
    return decomp, cert
