"""Exact sparse multivariate polynomial arithmetic over the rationals.

Coefficients are exact rationals (plain ints where possible, Fraction
otherwise); exponent vectors are stored sparsely as sorted
(variable, exponent) pairs.  Everything here is a value: arithmetic
returns new objects and never mutates.

The same ExponentMap type doubles as the K: E -> N maps used for
monomial exponents, column replication counts and path-family loads:
in each case it is a finitely supported map into the non-negative
integers keyed by a 0-based index.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError


def _as_coeff(c):
    """Normalize a coefficient: integral Fractions collapse to int."""
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    raise InputError(f"coefficient must be an exact rational, got {c!r}", code="non-exact-number")


class ExponentMap:
    """Finitely supported map index -> non-negative exponent.

    Zero entries are never stored, so two maps are equal iff they agree
    everywhere.  Instances are immutable and hashable and serve as the
    monomial keys of SparsePoly.
    """

    __slots__ = ("_pairs",)

    def __init__(self, values=()):
        if isinstance(values, ExponentMap):
            self._pairs = values._pairs
            return
        items = values.items() if hasattr(values, "items") else values
        acc = {}
        for i, e in items:
            if not isinstance(i, int) or not isinstance(e, int) or isinstance(e, bool):
                raise InputError(f"exponent entries must be int pairs, got ({i!r}, {e!r})",
                                 code="malformed-exponent")
            if i < 0 or e < 0:
                raise InputError(f"negative index or exponent ({i}, {e})", code="malformed-exponent")
            if e:
                acc[i] = acc.get(i, 0) + e
        self._pairs = tuple(sorted(acc.items()))

    @classmethod
    def from_dense(cls, seq):
        return cls(enumerate(seq))

    @classmethod
    def _raw(cls, pairs):
        em = cls.__new__(cls)
        em._pairs = pairs
        return em

    def to_dense(self, size):
        if self._pairs and self._pairs[-1][0] >= size:
            raise InputError(f"exponent map has support beyond index {size - 1}",
                             code="malformed-exponent")
        dense = [0] * size
        for i, e in self._pairs:
            dense[i] = e
        return tuple(dense)

    def __getitem__(self, i):
        for j, e in self._pairs:
            if j == i:
                return e
        return 0

    def items(self):
        return self._pairs

    def support(self):
        return tuple(i for i, _ in self._pairs)

    def total(self):
        return sum(e for _, e in self._pairs)

    def max_entry(self):
        return max((e for _, e in self._pairs), default=0)

    def factorial(self):
        out = 1
        for _, e in self._pairs:
            out *= math.factorial(e)
        return out

    def __add__(self, other):
        a, b = self._pairs, other._pairs
        if not a:
            return other
        if not b:
            return self
        out = []
        ia = ib = 0
        while ia < len(a) and ib < len(b):
            (i, e), (j, f) = a[ia], b[ib]
            if i < j:
                out.append((i, e))
                ia += 1
            elif j < i:
                out.append((j, f))
                ib += 1
            else:
                out.append((i, e + f))
                ia += 1
                ib += 1
        out.extend(a[ia:])
        out.extend(b[ib:])
        return ExponentMap._raw(tuple(out))

    def __le__(self, other):
        """Pointwise domination: self(i) <= other(i) for every index."""
        return all(e <= other[i] for i, e in self._pairs)

    def __eq__(self, other):
        return isinstance(other, ExponentMap) and self._pairs == other._pairs

    def __hash__(self):
        return hash(self._pairs)

    def __bool__(self):
        return bool(self._pairs)

    def __repr__(self):
        return f"ExponentMap({dict(self._pairs)})"


def exp_factorial(K):
    """Product of entrywise factorials of K, as an exact big integer."""
    return K.factorial()


_EMPTY = ExponentMap()


class SparsePoly:
    """Polynomial over variables x0..x{nvars-1} with exact coefficients.

    Terms live in a dict ExponentMap -> coefficient with no stored
    zeros; like terms are combined as soon as they appear, so memory is
    bounded by the support of the result.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars, terms=()):
        if not isinstance(nvars, int) or nvars < 0:
            raise InputError(f"nvars must be a non-negative integer, got {nvars!r}",
                             code="bad-variable-count")
        self.nvars = nvars
        acc = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for key, c in items:
            K = key if isinstance(key, ExponentMap) else ExponentMap(key)
            if K.support() and K.support()[-1] >= nvars:
                raise InputError(f"monomial {K!r} uses a variable beyond x{nvars - 1}",
                                 code="bad-variable-count")
            c = _as_coeff(c)
            if c:
                prev = acc.get(K, 0)
                s = prev + c
                if s:
                    acc[K] = s
                elif K in acc:
                    del acc[K]
        self._terms = acc

    @classmethod
    def _raw(cls, nvars, terms):
        P = cls.__new__(cls)
        P.nvars = nvars
        P._terms = terms
        return P

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, value):
        c = _as_coeff(value)
        return cls._raw(nvars, {_EMPTY: c} if c else {})

    @classmethod
    def variable(cls, nvars, i):
        if not 0 <= i < nvars:
            raise InputError(f"variable index {i} out of range", code="bad-variable-count")
        return cls._raw(nvars, {ExponentMap._raw(((i, 1),)): 1})

    @classmethod
    def linear_form(cls, coeffs):
        """Sum of coeffs[i] * x_i; nvars is len(coeffs)."""
        coeffs = list(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _as_coeff(c)
            if c:
                terms[ExponentMap._raw(((i, 1),))] = c
        return cls._raw(len(coeffs), terms)

    @property
    def is_zero(self):
        return not self._terms

    def terms(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def coefficient(self, K):
        """Coefficient of the monomial x^K; 0 when absent."""
        if not isinstance(K, ExponentMap):
            K = ExponentMap(K)
        return Fraction(self._terms.get(K, 0))

    def support(self):
        return set(self._terms)

    def homogeneous_degree(self):
        """Common total degree of all terms, or None (zero or mixed)."""
        degs = {K.total() for K in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def _check_same_vars(self, other):
        if self.nvars != other.nvars:
            raise InputError(
                f"polynomials are over different variable sets ({self.nvars} vs {other.nvars})",
                code="variable-set-mismatch",
            )

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.nvars, other)
        self._check_same_vars(other)
        acc = dict(self._terms)
        for K, c in other._terms.items():
            s = acc.get(K, 0) + c
            if s:
                acc[K] = s
            elif K in acc:
                del acc[K]
        return SparsePoly._raw(self.nvars, acc)

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {K: -c for K, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = _as_coeff(other)
            if not c:
                return SparsePoly.zero(self.nvars)
            return SparsePoly._raw(self.nvars, {K: v * c for K, v in self._terms.items()})
        self._check_same_vars(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        acc = {}
        for K1, c1 in a.items():
            for K2, c2 in b.items():
                K = K1 + K2
                s = acc.get(K, 0) + c1 * c2
                if s:
                    acc[K] = s
                elif K in acc:
                    del acc[K]
        return SparsePoly._raw(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError(f"polynomial power must be a non-negative integer, got {k!r}",
                             code="bad-exponent")
        result = SparsePoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.nvars == other.nvars
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def dump(self):
        """Debug format: one "coeff monomial" line per term, lines sorted."""
        lines = []
        for K, c in self._terms.items():
            mono = " ".join(f"x{i}^{e}" for i, e in K.items())
            lines.append(f"{c} {mono}".rstrip())
        return "\n".join(sorted(lines))

    def __repr__(self):
        return f"SparsePoly(nvars={self.nvars}, terms={len(self._terms)})"


def coefficient(P, K):
    """coe(x^K, P) as an exact Fraction; 0 when the monomial is absent."""
    return P.coefficient(K)


def monomial_support(P):
    """The set of exponent vectors with nonzero coefficient in P."""
    return P.support()


def inner_product(f, g):
    """Sum over monomials of K! * coe(x^K, f) * coe(x^K, g).

    Both arguments must be homogeneous of the same degree over the same
    variable set (the zero polynomial is allowed).  All coefficients
    here are rational, so complex conjugation is the identity.
    """
    if not isinstance(f, SparsePoly) or not isinstance(g, SparsePoly):
        raise InputError("inner_product expects two polynomials", code="bad-input")
    f._check_same_vars(g)
    if f.is_zero or g.is_zero:
        return Fraction(0)
    df, dg = f.homogeneous_degree(), g.homogeneous_degree()
    if df is None or dg is None or df != dg:
        raise InputError(
            f"inner product needs equal-degree homogeneous arguments (got {df} vs {dg})",
            code="degree-mismatch",
        )
    a, b = f._terms, g._terms
    if len(a) > len(b):
        a, b = b, a
    total = 0
    for K, c in a.items():
        d = b.get(K)
        if d:
            total += K.factorial() * c * d
    return Fraction(total)


def poly_from_linear_forms(rows, nvars=None):
    """Expanded product of the linear forms given by the rows of a matrix.

    ``rows`` is any iterable of coefficient sequences (an IntMatrix
    works).  The result is zero or homogeneous of degree equal to the
    number of rows.
    """
    if hasattr(rows, "entries") and hasattr(rows, "cols"):
        if nvars is None:
            nvars = rows.cols
        rows = rows.entries
    rows = [list(r) for r in rows]
    if nvars is None:
        if not rows:
            raise InputError("cannot infer the variable count from an empty row list",
                             code="bad-variable-count")
        nvars = len(rows[0])
    P = SparsePoly.constant(nvars, 1)
    for r in rows:
        if len(r) != nvars:
            raise InputError(f"row length {len(r)} does not match {nvars} variables",
                             code="malformed-matrix")
        form = SparsePoly.linear_form(r)
        if form.is_zero:
            return SparsePoly.zero(nvars)
        P = P * form
    return P


def vandermonde_poly(G):
    """Expanded product of (x_i - x_j) over the edges (i, j) of G, i < j.

    Vertex v is variable v-1.
    """
    P = SparsePoly.constant(G.n, 1)
    for i, j in G.edges:
        P = P * SparsePoly._raw(
            G.n,
            {ExponentMap._raw(((i - 1, 1),)): 1, ExponentMap._raw(((j - 1, 1),)): -1},
        )
    return P


def plus_power_poly(G, K):
    """Expanded product of (x_i + x_j)^K(e) over the edges of G.

    K is indexed by canonical edge index; vertex v is variable v-1.
    """
    if K.support() and K.support()[-1] >= G.m:
        raise InputError("exponent map is not indexed by the graph's edges", code="unknown-edge")
    P = SparsePoly.constant(G.n, 1)
    for idx, e in K.items():
        i, j = G.edges[idx]
        binomial = SparsePoly._raw(
            G.n,
            {ExponentMap._raw(((i - 1, 1),)): 1, ExponentMap._raw(((j - 1, 1),)): 1},
        )
        P = P * binomial ** e
    return P


def total_weight_poly(G):
    """The properness polynomial of G over vertex and edge variables.

    One factor per edge (i, j), i < j: the weight total seen at i minus
    the total seen at j, where vertex v contributes x_{v-1} and edge k
    contributes x_{n+k}.  A weighting is proper exactly when this
    polynomial is nonzero at the corresponding point.
    """
    nvars = G.n + G.m
    rows = []
    for i, j in G.edges:
        row = [0] * nvars
        row[i - 1] += 1
        row[j - 1] -= 1
        for k in G.incident(i):
            row[G.n + k] += 1
        for k in G.incident(j):
            row[G.n + k] -= 1
        rows.append(row)
    return poly_from_linear_forms(rows, nvars)
