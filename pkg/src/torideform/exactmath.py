"""Exact rational and integer linear algebra.

Rationals are ``fractions.Fraction``; vectors are tuples, matrices are lists
of row lists. Nothing in here touches floating point.
"""
from fractions import Fraction
from math import gcd, lcm, floor, ceil

from .exceptions import NotALattice

Rat = Fraction


def Q(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point input is not allowed")
    return Fraction(x)


def qvec(xs):
    return tuple(Q(x) for x in xs)


def frac_up(z):
    """Return ceil(z) - z, which lies in [0, 1)."""
    z = Q(z)
    return ceil(z) - z


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a):
    return tuple(k * x for x in a)


def is_integral(a):
    return all(Q(x).denominator == 1 for x in a)


def denominator_lcm(xs):
    return lcm(1, *(Q(x).denominator for x in xs))


def primitive(v):
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    v = qvec(v)
    m = denominator_lcm(v)
    ints = [int(x * m) for x in v]
    g = gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v)), 0) for row in a)


def transpose(m, ncols=None):
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------- integers

def hnf(m):
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u * m == h``. Pivots are
    positive and entries above a pivot are reduced into ``[0, pivot)``; zero
    rows sit at the bottom.
    """
    h = [[int(x) for x in row] for row in m]
    r = len(h)
    c = len(h[0]) if r else 0
    u = identity(r)
    p = 0
    for j in range(c):
        if p == r:
            break
        while True:
            nz = [i for i in range(p, r) if h[i][j] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(h[i][j]))
            h[p], h[k] = h[k], h[p]
            u[p], u[k] = u[k], u[p]
            done = True
            for i in range(p + 1, r):
                if h[i][j]:
                    q = h[i][j] // h[p][j]
                    h[i] = [x - q * y for x, y in zip(h[i], h[p])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[p])]
                    if h[i][j]:
                        done = False
            if done:
                break
        if h[p][j] == 0:
            continue
        if h[p][j] < 0:
            h[p] = [-x for x in h[p]]
            u[p] = [-x for x in u[p]]
        for i in range(p):
            q = h[i][j] // h[p][j]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[p])]
                u[i] = [x - q * y for x, y in zip(u[i], u[p])]
        p += 1
    return h, u


def hnf_rows(vectors):
    """Nonzero rows of the HNF of the given integer vectors: a canonical Z-basis."""
    if not vectors:
        return []
    h, _ = hnf(vectors)
    return [tuple(row) for row in h if any(row)]


def integer_kernel(m, ncols=None):
    """Z-basis of ``{x in Z^cols : m x = 0}``, HNF-reduced."""
    if not m:
        return [tuple(row) for row in identity(ncols or 0)]
    cols = len(m[0])
    h, u = hnf(transpose(m))
    kernel = [u[i] for i in range(cols) if not any(h[i])]
    return hnf_rows(kernel)


# ---------------------------------------------------------------- rationals

def rref(m):
    """Reduced row echelon form over Q. Returns ``(rows, pivot_columns)``."""
    a = [[Q(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    p = 0
    for j in range(cols):
        k = next((i for i in range(p, rows) if a[i][j] != 0), None)
        if k is None:
            continue
        a[p], a[k] = a[k], a[p]
        piv = a[p][j]
        a[p] = [x / piv for x in a[p]]
        for i in range(rows):
            if i != p and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[p])]
        pivots.append(j)
        p += 1
        if p == rows:
            break
    return a[:p], pivots


def rank(m):
    return len(rref(m)[1]) if m else 0


def nullspace(m, ncols=None):
    """Q-basis of the right kernel, one vector per free column."""
    cols = len(m[0]) if m else ncols
    if not m:
        return [tuple(Fraction(int(i == j)) for j in range(cols)) for i in range(cols)]
    r, piv = rref(m)
    free = [j for j in range(cols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, pc in zip(r, piv):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(m, b):
    """One rational solution of ``m x = b`` or None when inconsistent."""
    cols = len(m[0])
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    r, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for row, pc in zip(r, piv):
        x[pc] = row[-1]
    return tuple(x)


def span_contains(basis, v):
    if not basis:
        return all(x == 0 for x in v)
    return solve(transpose(basis), v) is not None


def solve_congruence_lattice(a, subspace=None):
    """Z-basis of ``{x in V : a x integral}``.

    ``V`` is the span of ``subspace`` (all of Q^cols when omitted). The result
    is expressed in ambient coordinates. Raises NotALattice if the solution set
    contains a line, i.e. ``a`` is not injective on ``V``.
    """
    if subspace is None:
        cols = len(a[0])
        subspace = [tuple(Fraction(int(i == j)) for j in range(cols)) for i in range(cols)]
    k = len(subspace)
    if k == 0:
        return []
    # c maps parameters y (x = B y) to the conditions a B y
    b_cols = transpose(subspace)
    c = matmul([[Q(x) for x in row] for row in a], b_cols) if a else []
    if rank(c) < k:
        raise NotALattice("conditions do not cut out a full-rank lattice")
    # image lattice: integer points of the column span of c
    orth = nullspace(transpose(c), ncols=len(c))
    orth_int = [primitive(v) for v in orth]
    img = integer_kernel(orth_int, ncols=len(c)) if orth_int else [
        tuple(int(i == j) for j in range(len(c))) for i in range(len(c))]
    ys = [solve(c, z) for z in img]
    basis = [tuple(sum((yi * bi[j] for yi, bi in zip(y, subspace)), Fraction(0))
                   for j in range(len(subspace[0]))) for y in ys]
    return basis


def floor_div_frac(x, y):
    return floor(Q(x) / Q(y))


def rational_gcd(xs):
    """Positive generator of the subgroup of Q generated by ``xs`` (0 if all zero)."""
    xs = [Q(x) for x in xs if x != 0]
    if not xs:
        return Fraction(0)
    m = denominator_lcm(xs)
    return Fraction(gcd(*(int(x * m) for x in xs)), m)
