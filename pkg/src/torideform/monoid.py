"""Generators of the monoids T~, T~_d and S~, membership, and the free-pair
decompositions b, lambda, lambda~.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, lcm

from .dualcone import cone_facets, eta_Z, hilbert_basis, in_S
from .exactmath import (
    Q, dot, denominator_lcm, rank, rational_gcd,
    solve_congruence_lattice, vadd, vscale,
)
from .exceptions import NotInMonoid
from .tstar import eta_tilde_Z, eta_tilde_Z_via_t, t_of


@dataclass(frozen=True)
class Generator:
    label: str
    element: object       # TStarElement, or SElement for S~
    kind: str             # "s", "t" or "x"
    edge: int = -1
    witness: tuple = ()   # c with element = t(c, d), or the Hilbert tail c

    @property
    def degree(self):
        return self.element.degree


@dataclass(frozen=True)
class SElement:
    """Element [c, y] of M + T*_Z(P)."""
    c: tuple
    y: object

    def __add__(self, other):
        return SElement(tuple(a + b for a, b in zip(self.c, other.c)), self.y + other.y)

    def __sub__(self, other):
        return SElement(tuple(a - b for a, b in zip(self.c, other.c)), self.y - other.y)

    def __mul__(self, k):
        return SElement(tuple(k * a for a in self.c), self.y * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SElement) and self.c == other.c and self.y == other.y

    def __hash__(self):
        return hash((self.c, self.y))

    @property
    def values(self):
        return tuple(Q(x) for x in self.c) + self.y.values

    @property
    def degree(self):
        return self.y.degree

    @property
    def coords(self):
        return tuple(int(x) for x in self.values)

    def __str__(self):
        return f"[{', '.join(str(x) for x in self.c)}; {self.y}]"


class AffineSemigroup:
    """Finitely generated submonoid of a lattice with generators in canonical order."""

    def __init__(self, generators, name="T~"):
        self.generators = list(generators)
        self.name = name

    @property
    def labels(self):
        return [g.label for g in self.generators]

    @property
    def elements(self):
        return [g.element for g in self.generators]

    @property
    def coordinates(self):
        return [g.element.coords for g in self.generators]

    @property
    def degrees(self):
        return [g.element.degree for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, label):
        for g in self.generators:
            if g.label == label:
                return g
        raise KeyError(label)

    def index_of(self, element):
        for k, g in enumerate(self.generators):
            if g.element == element:
                return k
        return None

    def group_rank(self):
        return rank(self.coordinates) if self.generators else 0

    def membership(self, x):
        """A representation of x as an N-combination {label: multiplicity}, or None."""
        rep = represent(x.values, [g.element.values for g in self.generators],
                        [g.element.degree for g in self.generators], x.degree)
        if rep is None:
            return None
        return {self.generators[k].label: m for k, m in enumerate(rep) if m}

    def exponent_vector(self, x):
        rep = represent(x.values, [g.element.values for g in self.generators],
                        [g.element.degree for g in self.generators], x.degree)
        return tuple(rep) if rep is not None else None

    def is_degree1_generated(self):
        for g in self.generators:
            if g.degree != 1:
                return False, g
        return True, None


def represent(target, gens, weights, target_weight, facets=None):
    """Depth-first search for nonnegative integers a with sum a_k gens_k = target.

    ``weights`` is a positive grading (every generator has weight >= 1 or at
    least > 0); generators are tried in order and earlier generators get the
    larger multiplicity, so the answer is canonical for a given ordering.
    ``facets`` are inequalities valid on the generated cone, used for pruning;
    by default they are computed from ``gens``.
    """
    target = tuple(Q(x) for x in target)
    gens = [tuple(Q(x) for x in g) for g in gens]
    weights = [Q(w) for w in weights]
    target_weight = Q(target_weight)
    if target_weight < 0:
        return None
    if any(w <= 0 for w in weights):
        raise ValueError("generators must have positive weight")
    if facets is None:
        facets = _pruning_facets_cached(tuple(gens))
    ngen = len(gens)
    failed = set()

    def feasible(x):
        return all(dot(f, x) >= 0 for f in facets)

    def search(x, w, start):
        if w == 0:
            return [] if not any(x) else None
        key = (x, start)
        if key in failed:
            return None
        for k in range(start, ngen):
            if weights[k] > w:
                continue
            y = tuple(a - b for a, b in zip(x, gens[k]))
            if not feasible(y):
                continue
            rest = search(y, w - weights[k], k)
            if rest is not None:
                return [k] + rest
        failed.add(key)
        return None

    if not feasible(target):
        return None
    found = search(target, target_weight, 0)
    if found is None:
        return None
    out = [0] * ngen
    for k in found:
        out[k] += 1
    return out


@lru_cache(maxsize=256)
def _pruning_facets_cached(gens):
    return _pruning_facets(list(gens))


def _pruning_facets(gens):
    if not gens:
        return []
    r = rank(gens)
    if comb(len(set(gens)), max(r - 1, 0)) > 3000:
        return []
    facets, eqs = cone_facets(gens)
    out = list(facets)
    for e in eqs:
        out.append(tuple(e))
        out.append(tuple(-x for x in e))
    return out


# ---------------------------------------------------------------- T~_d

def _edge_lattice(e):
    """Basis of M_d = {c : <c,v>, <c,w> integral} and an element m with <m,d> = k_d > 0."""
    n = len(e.v)
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows += [list(e.v), list(e.w)]
    basis = [tuple(int(x) for x in b) for b in solve_congruence_lattice(rows)]
    vals = [dot(b, e.direction) for b in basis]
    k_d = rational_gcd(vals)
    den = denominator_lcm(vals + [k_d])
    coeffs = _bezout([int(x * den) for x in vals])
    m = tuple(sum(a * b[j] for a, b in zip(coeffs, basis)) for j in range(n))
    assert dot(m, e.direction) == k_d
    return basis, k_d, m


def _bezout(xs):
    """Integers a with sum a_i x_i = gcd(xs) >= 0."""
    g, coeffs = 0, []
    for x in xs:
        # extended gcd of (g, x)
        old_r, r = g, x
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [c * old_s for c in coeffs] + [old_t]
        g = old_r
    if g < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def edge_candidates(T, e):
    """A complete (not yet minimal) generating set of span_N{t(c,d) : c in M} for one edge.

    Within a class of M / M_d the fractional data of t(c,d) is fixed and
    <c,d> ranges over a coset of k_d Z, so t(c,d) grows by k_d * t_d when
    |<c,d>| grows by k_d. The smallest positive and the largest negative
    representative of each class, plus k_d * t_d, therefore generate.
    """
    n = len(e.v)
    _, k_d, m = _edge_lattice(e)
    box = lcm(denominator_lcm(e.v), denominator_lcm(e.w))
    classes = {}
    for c in product(range(box), repeat=n):
        key = (dot(c, e.v) % 1, dot(c, e.w) % 1)
        if key not in classes:
            classes[key] = c
    out = [(m, t_of(T, m, e))]
    for c in classes.values():
        x0 = dot(c, e.direction)
        r = x0 % k_d
        for x in ([r, r - k_d] if r else [-k_d]):
            steps = (x - x0) / k_d
            assert steps.denominator == 1
            cc = vadd(c, vscale(int(steps), m))
            cc = tuple(int(a) for a in cc)
            if dot(cc, e.direction) != 0:
                out.append((cc, t_of(T, cc, e)))
    return out


def _sort_key(g):
    """Degree, then s before t, then vertex or edge, then t-coefficient and formal coefficients."""
    el = g.element
    kind = {"s": 0, "t": 1, "x": 2}[g.kind]
    if g.kind == "s":
        return (el.degree, kind, g.witness, ())
    coeffs = el.coeffs if g.kind != "x" else tuple(Q(x) for x in el.c) + el.y.coeffs
    return (el.degree, kind, (g.edge,), coeffs)


def minimalize(candidates):
    """Drop candidates that are N-combinations of lower-degree ones; dedupe semantically."""
    uniq = {}
    for g in sorted(candidates, key=lambda g: (g.element.degree, _witness_size(g))):
        if g.element.is_zero:
            continue
        if g.element not in uniq:
            uniq[g.element] = g
    ordered = sorted(uniq.values(), key=_sort_key)
    kept = []
    for g in ordered:
        lower = [h for h in kept if h.element.degree < g.element.degree]
        if lower and represent(g.element.values, [h.element.values for h in lower],
                               [h.element.degree for h in lower], g.element.degree) is not None:
            continue
        kept.append(g)
    return sorted(kept, key=_sort_key)


def _witness_size(g):
    return (sum(abs(x) for x in g.witness), tuple(g.witness))


def _t_label(T, c, e):
    name = "d" if T.n_edges == 1 else f"d{e.index + 1}"
    cs = ",".join(str(x) for x in c)
    return f"t({cs},{name})" if len(c) == 1 else f"t(({cs}),{name})"


def _s_generators(T):
    return [Generator(f"s{i + 1}", T.s(i), "s", -1, (i,)) for i in range(T.n_vertices)
            if i not in T.lattice_vertices]


def submonoid_Td(T, edge):
    """Minimal generators of T~_d = span_N{s_v, s_w, t(c,d) : c in M}."""
    e = T.P.edges[edge] if isinstance(edge, int) else edge
    cands = [g for g in _s_generators(T) if g.witness[0] in (e.i, e.j)]
    for c, el in edge_candidates(T, e):
        cands.append(Generator(_t_label(T, c, e), el, "t", e.index, tuple(c)))
    return AffineSemigroup(minimalize(cands), name=f"T~_d{e.index + 1}")


def generators_Ttilde(T):
    """Minimal generators of T~ = span_N{s_v, t(c,d)}."""
    cands = _s_generators(T)
    for e in T.P.edges:
        for c, el in edge_candidates(T, e):
            cands.append(Generator(_t_label(T, c, e), el, "t", e.index, tuple(c)))
    return AffineSemigroup(minimalize(cands), name="T~")


def is_degree1_generated(sg):
    return sg.is_degree1_generated()


def membership(sg, x):
    return sg.membership(x)


# ---------------------------------------------------------------- S and S~

@dataclass(frozen=True)
class FreePairDecomposition:
    boundary: object
    interior: object


def decompose_S(P, s):
    """s = b + lambda R with b = [c, eta_Z(c)] on the boundary of S relative to T = N R."""
    s = tuple(int(x) for x in s)
    if not in_S(P, s):
        raise NotInMonoid(f"{s} is not in S")
    c = s[:-1]
    h = eta_Z(P, c)
    return FreePairDecomposition(tuple(c) + (h,), s[-1] - h)


def b_of(P, s):
    return decompose_S(P, s).boundary


def lambda_of(P, s):
    return decompose_S(P, s).interior


class MonoidData:
    """Hilbert basis, T~ and S~ for a full-dimensional polyhedron, with the k-indexed maps."""

    def __init__(self, T, ttilde=None):
        self.T = T
        self.P = T.P
        self.hb = hilbert_basis(self.P)
        self.tails = [tuple(c) for c in self.hb.tails]
        self.heights = list(self.hb.heights)
        self.ttilde = ttilde if ttilde is not None else generators_Ttilde(T)
        self._eta_tilde = {}
        grading = [sum(col) for col in zip(*([tuple(v) + (Fraction(1),) for v in self.P.vertices]
                                              + [tuple(Q(x) for x in r) + (Fraction(0),) for r in self.P.tail_rays]))]
        self.s_grading = tuple(grading)

    @property
    def r(self):
        return len(self.tails)

    def eta_tilde_Z(self, c):
        c = tuple(int(x) for x in c)
        if c not in self._eta_tilde:
            self._eta_tilde[c] = eta_tilde_Z(self.T, c)
        return self._eta_tilde[c]

    def s_tilde(self, c):
        return SElement(tuple(int(x) for x in c), self.eta_tilde_Z(c))

    def generators_Stilde(self):
        gens = [Generator(g.label, SElement(tuple([0] * self.P.n), g.element), "x", g.edge, g.witness)
                for g in self.ttilde.generators]
        for k, c in enumerate(self.tails):
            gens.append(Generator(f"x{k + 1}", self.s_tilde(c), "x", -1, c))
        return AffineSemigroup(gens, name="S~")

    def c_of(self, k):
        return tuple(sum(ki * c[j] for ki, c in zip(k, self.tails)) for j in range(self.P.n))

    def lam(self, k):
        c = self.c_of(k)
        return sum(ki * h for ki, h in zip(k, self.heights)) - eta_Z(self.P, c)

    def s_weight(self, s):
        return dot(self.s_grading, s)

    def boundary_index(self, k):
        """Canonical Hilbert-basis multi-index b(k) of [c, eta_Z(c)]."""
        c = self.c_of(k)
        return self.represent_S(tuple(c) + (eta_Z(self.P, c),))

    def represent_S(self, s):
        gens = [tuple(c) + (h,) for c, h in zip(self.tails, self.heights)]
        # S is cut out by the rays of the cone over P
        facets = [tuple(v) + (Fraction(1),) for v in self.P.vertices]
        facets += [tuple(Q(x) for x in r) + (Fraction(0),) for r in self.P.tail_rays]
        rep = represent(s, gens, [self.s_weight(g) for g in gens], self.s_weight(s), facets)
        if rep is None:
            raise NotInMonoid(f"{s} has no representation by boundary Hilbert elements")
        return tuple(rep)

    def lambda_tilde(self, k, check=True):
        """sum k_i eta~_Z(c_i) - eta~_Z(c), cross-checked against the path expansion."""
        k = tuple(k)
        c = self.c_of(k)
        direct = self.T.zero()
        for ki, ci in zip(k, self.tails):
            if ki:
                direct = direct + ki * self.eta_tilde_Z(ci)
        direct = direct - self.eta_tilde_Z(c)
        if check:
            expanded = self.lambda_tilde_expansion(k)
            if expanded != direct:
                raise AssertionError(f"lambda~ routes disagree for k={k}: {direct} vs {expanded}")
        return direct

    def lambda_tilde_expansion(self, k):
        """sum_j (k_j - b_j) E_j with E_j = eta~_Z(c_j) rebuilt from t-elements along v* -> v(c) -> v(c_j)."""
        P = self.P
        c = self.c_of(k)
        b = self.boundary_index(k)
        lam_path = P.path_lambda(c).steps
        vc = lam_path[-1]
        total = self.T.zero()
        for j, (kj, bj) in enumerate(zip(k, b)):
            if kj == bj:
                continue
            mu = P.path_mu(vc, self.tails[j]).steps
            seq = tuple(lam_path) + tuple(mu[1:])
            total = total + (kj - bj) * eta_tilde_Z_via_t(self.T, self.tails[j], seq)
        return total

    def b_tilde(self, k):
        return self.s_tilde(self.c_of(k))


def generators_Stilde(T, ttilde=None):
    return MonoidData(T, ttilde).generators_Stilde()


def lambda_tilde(T, k, data=None):
    data = data or MonoidData(T)
    return data.lambda_tilde(k)
