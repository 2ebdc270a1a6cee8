"""The cone over P, its dual, the monoid S and its Hilbert basis."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, lcm

from .exactmath import (
    Q, dot, hnf, nullspace, primitive, rank, solve, transpose,
)
from .exceptions import NotLowerBounded, NotPointed


def cone_facets(gens):
    """Facet normals and defining equations of ``cone(gens)``.

    Normals are primitive integer vectors inside the linear span of the
    generators, oriented to be nonnegative on the cone. ``equations`` is an
    integer basis of the orthogonal complement of the span.
    """
    gens = sorted(set(tuple(Q(x) for x in g) for g in gens if any(g)))
    if not gens:
        return [], []
    dim = len(gens[0])
    eqs = [primitive(v) for v in nullspace(gens)]
    k = rank(gens)
    facets = set()
    for sub in combinations(range(len(gens)), k - 1):
        rows = [gens[i] for i in sub] + list(eqs)
        ns = nullspace(rows, ncols=dim) if rows else nullspace([], ncols=dim)
        if len(ns) != 1:
            continue
        n = primitive(ns[0])
        vals = [dot(n, g) for g in gens]
        if all(x >= 0 for x in vals) and any(x > 0 for x in vals):
            facets.add(n)
        elif all(x <= 0 for x in vals) and any(x < 0 for x in vals):
            facets.add(tuple(-x for x in n))
    return sorted(facets), eqs


def cone_faces(gens, facets):
    """All faces as frozensets of generator indices (intersection closure)."""
    tight = [frozenset(i for i, g in enumerate(gens) if dot(n, g) == 0) for n in facets]
    faces = {frozenset(range(len(gens)))}
    frontier = list(faces)
    while frontier:
        new = []
        for f in frontier:
            for t in tight:
                g = f & t
                if g not in faces:
                    faces.add(g)
                    new.append(g)
        frontier = new
    return faces


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone in Z^dim given by rays and facet normals."""
    dim: int
    rays: tuple
    facets: tuple
    equations: tuple = ()
    lineality: tuple = ()

    @classmethod
    def from_rays(cls, rays, dim=None):
        rays = [tuple(Q(x) for x in r) for r in rays if any(r)]
        if dim is None:
            dim = len(rays[0])
        if not rays:
            return cls(dim, (), (), tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))
        facets, eqs = cone_facets(rays)
        lin = _lineality(rays, facets)
        prims = sorted(set(primitive(r) for r in rays))
        if lin:
            return cls(dim, tuple(prims), tuple(facets), tuple(eqs), tuple(lin))
        extreme = []
        for p in prims:
            tight = [n for n in facets if dot(n, p) == 0]
            face = [q for q in prims if all(dot(n, q) == 0 for n in tight)]
            if rank(face) == 1:
                extreme.append(p)
        return cls(dim, tuple(extreme), tuple(facets), tuple(eqs), ())

    @property
    def is_full_dimensional(self):
        return not self.equations

    @property
    def is_pointed(self):
        return not self.lineality

    def contains(self, x):
        return (all(dot(n, x) >= 0 for n in self.facets)
                and all(dot(e, x) == 0 for e in self.equations))


def _lineality(rays, facets):
    # generators tight on every facet span the lineality space
    lin = [r for r in rays if all(dot(n, r) == 0 for n in facets)]
    if not lin:
        return []
    basis = []
    for r in lin:
        if rank(basis + [r]) > len(basis):
            basis.append(r)
    return [primitive(b) for b in basis]


def cone_over(P):
    """sigma = cone(P, 1): rays (v, 1) for vertices and (r, 0) for tail rays."""
    gens = [tuple(v) + (Fraction(1),) for v in P.vertices]
    gens += [tuple(Q(x) for x in r) + (Fraction(0),) for r in P.tail_rays]
    return Cone.from_rays(gens, dim=P.n + 1)


def dual_cone(C):
    """Dual cone with respect to the standard pairing on Z^dim."""
    dim = C.dim
    if not C.rays:
        units = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        return Cone(dim, tuple(sorted(units)), (), (), tuple(units))
    rays = list(C.facets)
    for e in C.equations:
        rays.append(tuple(e))
        rays.append(tuple(-x for x in e))
    if not rays:
        return Cone(dim, (), (), tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))
    return Cone.from_rays(rays, dim=dim)


# ------------------------------------------------------------ Hilbert basis

def _simplicial_pieces(rays, dim):
    """Pulling triangulation of a pointed cone spanned by ``rays``."""
    rays = [tuple(r) for r in rays]
    if len(rays) == rank(rays):
        return [rays]
    facets, _ = cone_facets(rays)
    apex = rays[0]
    pieces = []
    for n in facets:
        if dot(n, apex) == 0:
            continue
        face = [r for r in rays if dot(n, r) == 0]
        for simplex in _simplicial_pieces(face, dim):
            pieces.append([apex] + simplex)
    return pieces


def _parallelepiped_points(simplex):
    """Nonzero lattice points of the half-open parallelepiped of a simplicial cone."""
    rows = [[int(x) for x in r] for r in simplex]
    dim = len(rows[0])
    h, _ = hnf(rows)
    diag = [next(x for x in row if x != 0) for row in h]
    cols = transpose(rows)
    # coefficients of a box point are inverse(cols) * a; scale to integers once
    inverse = transpose([solve(cols, [int(i == j) for i in range(dim)]) for j in range(dim)])
    scale = lcm(*(Fraction(x).denominator for row in inverse for x in row))
    adj = [[int(x * scale) for x in row] for row in inverse]
    points = []
    for a in product(*(range(d) for d in diag)):
        # HNF is square upper triangular here, so the box is a transversal of Z^dim / lattice
        frac = [sum(m * ai for m, ai in zip(row, a)) % scale for row in adj]
        x = tuple(sum(f * r[j] for f, r in zip(frac, rows)) // scale for j in range(dim))
        if any(x):
            points.append(x)
    return points


def hilbert_basis_of_cone(C):
    """Minimal generating set of ``C cap Z^dim`` for a full-dimensional pointed cone."""
    if not C.is_pointed:
        raise NotPointed("cone has a nontrivial lineality space")
    if not C.rays:
        return []
    cands = set(tuple(int(x) for x in r) for r in C.rays)
    for simplex in _simplicial_pieces(list(C.rays), C.dim):
        if rank(simplex) < C.dim:
            raise NotPointed("cone is not full-dimensional")
        cands.update(_parallelepiped_points(simplex))
    # x - y lies in C iff every facet value of y is at most that of x; a
    # reducible x is dominated by some basis element of smaller total value
    normals = [_integral(n) for n in C.facets]
    values = {x: tuple(sum(a * b for a, b in zip(n, x)) for n in normals) for x in cands}
    basis = []
    for x in sorted(cands, key=lambda x: (sum(values[x]), x)):
        vx = values[x]
        if not any(all(a <= b for a, b in zip(values[y], vx)) for y in basis):
            basis.append(x)
    return sorted(basis)


def _integral(v):
    den = lcm(*(Fraction(x).denominator for x in v))
    return [int(x * den) for x in v]


@dataclass
class HilbertBasis:
    """Hilbert basis of S = sigma^dual cap (M + Z) split into boundary lifts and R."""
    elements: list
    R: tuple
    tails: list = field(default_factory=list)
    heights: list = field(default_factory=list)

    @property
    def boundary(self):
        return [e for e in self.elements if e != self.R]


def check_tail_dual(P, c):
    if any(dot(r, c) < 0 for r in P.tail_rays):
        raise NotLowerBounded(f"{tuple(c)} is not bounded below on P")


def eta(P, c):
    """-min <v, c> over P."""
    check_tail_dual(P, c)
    return -min(dot(v, c) for v in P.vertices)


def eta_Z(P, c):
    return ceil(eta(P, c))


def v_of(P, c):
    """Lexicographically smallest vertex minimizing c (vertices are stored sorted)."""
    check_tail_dual(P, c)
    vals = [dot(v, c) for v in P.vertices]
    m = min(vals)
    return vals.index(m)


def hilbert_basis(P):
    """Hilbert basis of S for the polyhedron P, each element [c, eta_Z(c)] or R."""
    if not P.is_full_dimensional:
        raise NotPointed("P is not full-dimensional, so S has units")
    sigma = cone_over(P)
    dual = dual_cone(sigma)
    elems = hilbert_basis_of_cone(dual)
    R = tuple([0] * P.n + [1])
    tails, heights = [], []
    for e in elems:
        if e == R:
            continue
        c = e[:-1]
        tails.append(c)
        heights.append(e[-1])
    return HilbertBasis(elems, R, tails, heights)


def in_S(P, s):
    c, h = s[:-1], s[-1]
    if any(dot(r, c) < 0 for r in P.tail_rays):
        return False
    return h >= eta(P, c)
