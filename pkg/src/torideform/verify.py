"""Randomized property checks over polyhedra.

Every check takes a polyhedron, a ``random.Random`` and a depth bound and
returns a list of counterexamples (dicts); an empty list is a pass.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, lcm

from .basespace import base_ideal, reduce_presentation, tangent_report
from .dualcone import in_S
from .exceptions import HypothesisViolated, NotDegreeOneGenerated
from .exactmath import dot, vadd
from .ideal import (
    BinomialFactory, face_loops, local_ideal, loop_equation, stilde_ideal, toric_ideal,
)
from .monoid import MonoidData, decompose_S, generators_Ttilde
from .poly import GroebnerBasis
from .polyhedron import build_polyhedron
from .tstar import TSpace


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {"name": self.name, "cases": self.cases, "passed": self.passed,
                "failures": self.failures[:5]}


# ---------------------------------------------------------------- random inputs

def random_rational(rng, max_den=6, span=2):
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * q, span * q), q)


def _hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def random_polyhedron(rng, dim, max_den=6):
    """A full-dimensional polytope with rational vertices of denominator <= max_den."""
    while True:
        if dim == 1:
            a, b = random_rational(rng, max_den), random_rational(rng, max_den)
            if a != b:
                return build_polyhedron([[a], [b]])
        else:
            pts = [(random_rational(rng, max_den, 1), random_rational(rng, max_den, 1))
                   for _ in range(rng.randint(3, 4))]
            hull = _hull(pts)
            if len(hull) >= 3:
                return build_polyhedron(hull)


# ---------------------------------------------------------------- checks

def check_free_pair_S(P, rng, depth, samples=40):
    """Brute force: each sampled s in S splits uniquely as b + lambda R."""
    out = []
    bound = max(depth, 1)
    for _ in range(samples):
        c = tuple(rng.randint(-bound, bound) for _ in range(P.n))
        h = rng.randint(-bound, 2 * bound)
        s = c + (h,)
        if not in_S(P, s):
            continue
        # every split has b = s - lam R in S with b - R outside S
        reach = h + 2 + int(max(abs(dot(v, c)) for v in P.vertices))
        splits = [lam for lam in range(reach + 1)
                  if in_S(P, c + (h - lam,)) and not in_S(P, c + (h - lam - 1,))]
        dec = decompose_S(P, s)
        if splits != [dec.interior] or dec.boundary[-1] != h - dec.interior:
            out.append({"s": list(s), "splits": splits, "decomposition": dec.interior})
    return out


def check_free_pair_Stilde(P, rng, depth, data=None, samples=20):
    """Random sums of S~ generators decompose as [c, eta~_Z(c)] + (element of T~)."""
    data = data or MonoidData(TSpace(P))
    sg = data.generators_Stilde()
    gens = sg.generators
    out = []
    for _ in range(samples):
        total = None
        budget = depth
        while budget > 0:
            g = rng.choice(gens)
            total = g.element if total is None else total + g.element
            budget -= 1
        if total is None:
            continue
        b = data.s_tilde(total.c)
        rest = total.y - b.y
        if data.ttilde.membership(rest) is None:
            out.append({"element": str(total), "remainder": str(rest)})
    return out


def check_projection_identity(P, rng, depth, data=None, samples=30):
    """b(w1 + w2) = b(b(w1) + b(w2)) and the matching lambda identity."""
    data = data or MonoidData(TSpace(P))
    hb = [tuple(c) + (h,) for c, h in zip(data.tails, data.heights)] + [data.hb.R]
    out = []

    def rand_elem():
        k = [rng.randint(0, 2) for _ in hb]
        while sum(k) > max(depth, 1):
            k[rng.randrange(len(k))] = 0
        return tuple(sum(ki * g[j] for ki, g in zip(k, hb)) for j in range(P.n + 1))
    for _ in range(samples):
        w1, w2 = rand_elem(), rand_elem()
        d1, d2 = decompose_S(P, w1), decompose_S(P, w2)
        d12 = decompose_S(P, vadd(w1, w2))
        db = decompose_S(P, vadd(d1.boundary, d2.boundary))
        if d12.boundary != db.boundary or d12.interior - d1.interior - d2.interior != db.interior:
            out.append({"w1": list(w1), "w2": list(w2)})
    return out


def check_lambda_tilde(P, rng, depth, data=None, samples=15):
    """pi(lambda~(k)) = lambda(k), lambda~(k) in T~, and both routes for lambda~ agree."""
    data = data or MonoidData(TSpace(P))
    out = []
    bound = min(depth, 5)
    for _ in range(samples):
        k = [0] * data.r
        for _ in range(rng.randint(0, bound)):
            k[rng.randrange(data.r)] += 1
        k = tuple(k)
        try:
            lt = data.lambda_tilde(k, check=True)
        except AssertionError as exc:
            out.append({"k": list(k), "error": str(exc)})
            continue
        if lt.degree != data.lam(k):
            out.append({"k": list(k), "degree": lt.degree, "lambda": data.lam(k)})
        elif data.ttilde.membership(lt) is None:
            out.append({"k": list(k), "not_in_Ttilde": str(lt)})
    return out


def min_t_degree(edge, bound, orientation=0):
    """min pi(t(c, d)) over integral c in [-bound, bound]^n.

    ``orientation`` +1 keeps <c, d> > 0, -1 keeps <c, d> < 0, 0 allows both.
    """
    best = None
    for c in product(range(-bound, bound + 1), repeat=len(edge.v)):
        x = dot(c, edge.direction)
        if x == 0 or x * orientation < 0:
            continue
        cv, cw = dot(c, edge.v), dot(c, edge.w)
        deg = ceil(cw) - ceil(cv) if x > 0 else ceil(cv) - ceil(cw)
        best = deg if best is None else min(best, deg)
    return best


def check_shortness_degree(P, rng, depth, T=None):
    """Least degree of t(c, d) per orientation equals the precise shortness of that side."""
    from .tstar import t_of
    out = []
    T = T or TSpace(P)
    for e in P.edges:
        den = lcm(*(x.denominator for x in e.v + e.w))
        bound = 2 * den * max(1, e.g_d)
        if P.n > 1:
            bound = min(bound, 24)
        left, right = e.side_indices
        got = (min_t_degree(e, bound, 1), min_t_degree(e, bound, -1))
        if got != (left, right):
            out.append({"edge": e.index, "min_degrees": list(got), "side_indices": [left, right]})
        if left == right and min(got) != e.shortness_index:
            out.append({"edge": e.index, "min_degree": min(got), "shortness_index": e.shortness_index})
        c = tuple(rng.randint(-3, 3) for _ in range(P.n))
        if dot(c, e.direction) != 0:
            el = t_of(T, c, e)
            x = dot(c, e.direction)
            cv, cw = dot(c, e.v), dot(c, e.w)
            expect = ceil(cw) - ceil(cv) if x > 0 else ceil(cv) - ceil(cw)
            if el.degree != expect:
                out.append({"edge": e.index, "c": list(c), "degree": el.degree, "expected": expect})
    return out


def check_shortness_degree_edge(P, rng=None, depth=3):
    """Edge-level claim taken literally: min over both orientations equals the edge index."""
    out = []
    for e in P.edges:
        den = lcm(*(x.denominator for x in e.v + e.w))
        bound = min(2 * den * max(1, e.g_d), 24 if P.n > 1 else 10 ** 6)
        got = min_t_degree(e, bound)
        if got != e.shortness_index:
            out.append({"edge": e.index, "min_degree": got, "shortness_index": e.shortness_index,
                        "side_indices": list(e.side_indices)})
    return out


def check_length_sandwich(P, rng=None, depth=3, edges=None):
    """l <= (k+1) - 1/g  =>  k-short  =>  l < k+1, for k = 0..depth."""
    out = []
    for e in edges if edges is not None else P.edges:
        for k in range(max(depth, 1) + 1):
            short = e.is_k_short(k)
            lower = e.lattice_length <= (k + 1) - Fraction(1, e.g_d)
            if (lower and not short) or (short and not e.lattice_length < k + 1):
                out.append({"edge": e.index, "k": k, "length": str(e.lattice_length),
                            "g_d": e.g_d, "k_short": short})
    return out


def _binomial_in_semigroup(F, sg_vectors):
    """Both monomials of F map to the same semigroup element."""
    images = []
    for e in F.terms:
        images.append(tuple(sum(m * v[j] for m, v in zip(e, sg_vectors))
                            for j in range(len(sg_vectors[0]))))
    return len(set(images)) <= 1


def check_F_binomials(P, rng, depth, factory=None, samples=10, use_groebner=None):
    factory = factory or BinomialFactory(TSpace(P))
    sg = factory.data.generators_Stilde()
    vectors = [tuple(g.element.values) for g in sg.generators]
    if use_groebner is None:
        use_groebner = len(sg) <= 10
    gb = stilde_ideal(factory.data) if use_groebner else None
    out = []
    for _ in range(samples):
        k = [0] * factory.r
        for _ in range(rng.randint(1, max(1, min(depth, 4)))):
            k[rng.randrange(factory.r)] += 1
        F = factory.F(k)
        f = factory.f(k)
        if factory.specialize_to_t(F) != f:
            out.append({"k": k, "F": str(F), "f": str(f), "problem": "specialization"})
        if not _binomial_in_semigroup(F, vectors):
            out.append({"k": k, "F": str(F), "problem": "semigroup images differ"})
        if gb is not None:
            moved = type(F)(gb.ring, F.terms)
            if not gb.contains(moved):
                out.append({"k": k, "F": str(F), "problem": "normal form nonzero"})
    return out


def _loop_forms(P, bound=1):
    forms = []
    for c in product(range(-bound, bound + 1), repeat=P.n):
        if any(c) and all(dot(r, c) >= 0 for r in P.tail_rays):
            forms.append(c)
    return forms


def check_local_loop_generation(P, rng=None, depth=None):
    """Local edge ideals plus loop equations generate I_T~ (skipped without the hypothesis)."""
    T = TSpace(P)
    sg = generators_Ttilde(T)
    try:
        locals_ = [local_ideal(T, e.index) for e in P.edges]
    except NotDegreeOneGenerated:
        return []
    gb = toric_ideal(sg)
    ring = gb.ring
    polys = []
    for L in locals_:
        # rewrite each local generator through the T~ representation of the T~_d generators
        images = []
        for g in L.semigroup.generators:
            rep = sg.exponent_vector(g.element)
            images.append(ring.monomial(rep))
        polys.extend(p.substitute(images, ring) for p in L.polys)
    for mu in face_loops(P):
        for c in _loop_forms(P, 2):
            polys.append(loop_equation(T, mu, c, sg))
    polys = [p for p in polys if not p.is_zero]
    out = []
    for p in polys:
        if not gb.contains(p):
            out.append({"outside_ideal": str(p)})
    generated = GroebnerBasis(ring, polys) if polys else GroebnerBasis(ring, [], computed=True)
    for p in gb.polys:
        if not generated.contains(p):
            out.append({"not_generated": str(p)})
    return out


def check_base_ideal_stability(P, rng, depth=None, multiples=10):
    T = TSpace(P)
    sg = generators_Ttilde(T)
    if not sg.is_degree1_generated()[0]:
        return []
    gb = toric_ideal(sg)
    gb.semigroup = sg
    J = base_ideal(gb)
    if not gb.polys:
        return []
    extra = list(gb.polys)
    for p in gb.polys:
        for _ in range(multiples):
            e = [rng.randint(0, 1) for _ in range(len(gb.ring))]
            extra.append(gb.ring.monomial(e) * p)
    bigger = GroebnerBasis(gb.ring, extra, gb.order, computed=True)
    J2 = base_ideal(bigger, check_stability=False)
    A, B = J.groebner(), GroebnerBasis(J2.ring, J2.generators)
    if not (A.contains_ideal(B) and B.contains_ideal(A)):
        return [{"J": A.strings(), "J_augmented": B.strings()}]
    return []


def check_tangent(P, rng=None, depth=None):
    try:
        rep = tangent_report(P)
    except HypothesisViolated:
        return []
    if not rep.ok:
        return [{"tangent_dim": rep.tangent_dim, "dim_T1": rep.dim_T1, "krull_dim": rep.krull_dim}]
    return []


def check_u0_invariance(P, rng, depth=None):
    from .basespace import w_grading
    T = TSpace(P)
    sg = generators_Ttilde(T)
    if not sg.is_degree1_generated()[0] or len(sg) < 2:
        return []
    gb = toric_ideal(sg)
    gb.semigroup = sg
    a, b = rng.sample(sg.labels, 2)
    Ja, Jb = base_ideal(gb, a), base_ideal(gb, b)
    pa, pb = reduce_presentation(Ja), reduce_presentation(Jb)
    wa, wb = w_grading(Ja), w_grading(Jb)
    if pa.tangent_dim != pb.tangent_dim or wa.dims != wb.dims:
        return [{"u0": [a, b], "tangent": [pa.tangent_dim, pb.tangent_dim],
                 "W": [wa.dims, wb.dims]}]
    return []


CHECKS = {
    "free_pair_S": check_free_pair_S,
    "free_pair_Stilde": check_free_pair_Stilde,
    "projection_identity": check_projection_identity,
    "lambda_tilde": check_lambda_tilde,
    "shortness_degree": check_shortness_degree,
    "shortness_degree_edge": check_shortness_degree_edge,
    "length_sandwich": check_length_sandwich,
    "F_binomials": check_F_binomials,
    "local_loop_generation": check_local_loop_generation,
    "base_ideal_stability": check_base_ideal_stability,
    "tangent": check_tangent,
    "u0_invariance": check_u0_invariance,
}

# checks that need S to be pointed
_FULL_DIMENSIONAL = {"free_pair_S", "free_pair_Stilde", "projection_identity",
                     "lambda_tilde", "F_binomials"}


def verify_polyhedron(P, seed=0, depth=3, names=None):
    """Run the property checks on one polyhedron; depth 0 runs nothing."""
    results = []
    if depth <= 0:
        return results
    for name in names or CHECKS:
        res = PropertyResult(name)
        if name in _FULL_DIMENSIONAL and not P.is_full_dimensional:
            results.append(res)
            continue
        rng = random.Random(f"{seed}:{name}")
        res.failures = CHECKS[name](P, rng, depth)
        res.cases = 1
        results.append(res)
    return results


def random_suite(name, seed=0, cases=200, depth=6, dims=(1, 2)):
    """Run one check over ``cases`` random polyhedra, alternating dimensions."""
    rng = random.Random(f"suite:{name}:{seed}")
    res = PropertyResult(name)
    check = CHECKS[name]
    for i in range(cases):
        dim = dims[i % len(dims)]
        P = random_polyhedron(rng, dim)
        try:
            fails = check(P, rng, depth)
        except Exception as exc:  # a crash is a counterexample, not a harness failure
            fails = [{"error": f"{type(exc).__name__}: {exc}"}]
        for f in fails:
            f["vertices"] = [[str(x) for x in v] for v in P.vertices]
        res.failures.extend(fails)
        res.cases += 1
    return res
