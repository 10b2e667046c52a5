"""Edge/vertex matrices, exact permanents, and permanent-based coefficients.

The permanent is computed by Ryser's inclusion-exclusion over column
subsets, walking the subsets in Gray-code order so each step updates a
single column.  All accumulation is exact big-integer arithmetic; the
side limit exists so oversized inputs are refused instead of silently
taking hours.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError, LimitError
from .polynomials import ExponentMap

DEFAULT_PERMANENT_LIMIT = 24


class IntMatrix:
    """Dense integer matrix, immutable once built."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        rows = [tuple(r) for r in entries]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise InputError("matrix rows have unequal lengths", code="malformed-matrix")
            if cols is not None and cols != width:
                raise InputError(f"declared {cols} columns but rows have {width}",
                                 code="malformed-matrix")
            cols = width
        elif cols is None:
            cols = 0
        for r in rows:
            for v in r:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InputError(f"matrix entries must be integers, got {v!r}",
                                     code="malformed-matrix")
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    def entry(self, i, j):
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return IntMatrix(zip(*self.entries) if self.rows else [], cols=self.rows)

    def matmul(self, other):
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}",
                             code="shape-mismatch")
        bt = list(zip(*other.entries)) if other.rows else [() for _ in range(other.cols)]
        out = [
            [sum(a * b for a, b in zip(r, c)) for c in bt]
            for r in self.entries
        ]
        return IntMatrix(out, cols=other.cols)

    def to_obj(self):
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_obj(cls, obj):
        if not isinstance(obj, dict) or "entries" not in obj:
            raise InputError('matrix object must have an "entries" key', code="malformed-matrix")
        M = cls(obj["entries"], cols=obj.get("cols"))
        if "rows" in obj and obj["rows"] != M.rows:
            raise InputError(f'declared {obj["rows"]} rows but entries have {M.rows}',
                             code="malformed-matrix")
        return M

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


def build_matrices(G):
    """The three edge-indexed matrices of G, rows in canonical edge order.

    A: one row per edge (i, j) with +1 in column i-1 and -1 in column j-1.
    B: unsigned incidence, 1 at both endpoint columns.
    C: edge-by-edge, entry (e, e') is +1 when e' meets e = (i, j) at i,
       -1 when it meets e at j, 0 otherwise (so the diagonal is zero).
       C equals A times B-transpose entrywise.
    """
    m, n = G.m, G.n
    A = []
    B = []
    for i, j in G.edges:
        arow = [0] * n
        brow = [0] * n
        arow[i - 1] = 1
        arow[j - 1] = -1
        brow[i - 1] = 1
        brow[j - 1] = 1
        A.append(arow)
        B.append(brow)
    C = []
    for e, (i, j) in enumerate(G.edges):
        crow = [0] * m
        for k in G.incident(i):
            if k != e:
                crow[k] = 1
        for k in G.incident(j):
            if k != e:
                crow[k] = -1
        C.append(crow)
    return IntMatrix(A, cols=n), IntMatrix(B, cols=n), IntMatrix(C, cols=m)


def replicate(M, K, axis):
    """Repeat columns (or rows) of M according to K.

    The result contains K(i) copies of column/row i, in index order, so
    it has total(K) columns (or rows).  Indices with K(i) = 0 are
    dropped.
    """
    if axis not in ("rows", "columns"):
        raise InputError(f'axis must be "rows" or "columns", got {axis!r}', code="bad-axis")
    size = M.rows if axis == "rows" else M.cols
    if K.support() and K.support()[-1] >= size:
        raise InputError(f"replication map has support beyond the {size} {axis}",
                         code="malformed-exponent")
    if axis == "rows":
        out = []
        for i, count in K.items():
            out.extend([M.entries[i]] * count)
        return IntMatrix(out, cols=M.cols)
    picks = [j for j, count in K.items() for _ in range(count)]
    return IntMatrix([[r[j] for j in picks] for r in M.entries], cols=len(picks))


def permanent(M, limit=DEFAULT_PERMANENT_LIMIT):
    """Exact permanent via Ryser's formula with Gray-code column updates.

    Refuses non-square matrices and sides above ``limit`` (the 2^n loop
    makes larger inputs impractical; raise the limit explicitly if you
    mean it).
    """
    if M.rows != M.cols:
        raise InputError(f"permanent needs a square matrix, got {M.rows}x{M.cols}",
                         code="non-square-matrix")
    n = M.rows
    if n > limit:
        raise LimitError(f"matrix side {n} exceeds the permanent limit {limit}",
                         code="side-over-limit")
    if n == 0:
        return 1
    rows = M.entries
    for r in rows:
        if not any(r):
            return 0
    cols = []
    for j in range(n):
        col = tuple((i, rows[i][j]) for i in range(n) if rows[i][j])
        if not col:
            return 0
        cols.append(col)

    # Subsets S of columns in Gray-code order; rowsums[i] tracks the sum
    # of row i over S.  zero_rows counts vanishing rowsums so the product
    # is skipped whenever it is certainly zero.
    rowsums = [0] * n
    zero_rows = n
    total = 0
    prod = math.prod
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        if (k ^ (k >> 1)) >> j & 1:
            for i, v in cols[j]:
                s = rowsums[i]
                if s == 0:
                    zero_rows -= 1
                s += v
                if s == 0:
                    zero_rows += 1
                rowsums[i] = s
        else:
            for i, v in cols[j]:
                s = rowsums[i]
                if s == 0:
                    zero_rows -= 1
                s -= v
                if s == 0:
                    zero_rows += 1
                rowsums[i] = s
        if zero_rows:
            continue
        p = prod(rowsums)
        if k & 1:
            total -= p
        else:
            total += p
    return total if n % 2 == 0 else -total


def coe_via_permanent(G, K, limit=DEFAULT_PERMANENT_LIMIT):
    """Full-degree monomial coefficient of G's properness polynomial.

    Equals per(C(K)) / K! where C is the edge-by-edge matrix of G and
    C(K) replicates its columns by K.  Requires total(K) == |E(G)| so
    the replicated matrix is square.
    """
    if K.total() != G.m:
        raise InputError(
            f"exponent total {K.total()} must equal the edge count {G.m}",
            code="degree-mismatch",
        )
    if K.support() and K.support()[-1] >= G.m:
        raise InputError("exponent map is not indexed by the graph's edges", code="unknown-edge")
    _, _, C = build_matrices(G)
    return Fraction(permanent(replicate(C, K, "columns"), limit), K.factorial())
