"""The base space of the versal family in degree -R.

Generators of I_T~ are rewritten in u_0 and T_i = u_0 - u_i. The coefficient
of each power of u_0 is a polynomial in the T's, and all of them together
generate the ideal J of the base space inside the affine space of the T's.
"""
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .exactmath import rank, rref
from .exceptions import HypothesisViolated, NotDegreeOneGenerated, NotHomogeneous
from .ideal import toric_ideal
from .monoid import generators_Ttilde
from .poly import GroebnerBasis, Poly, Ring, format_poly
from .tstar import TSpace


def t_variable(label):
    return f"T_{label}"


def _homogeneous_degree(p):
    degs = {sum(e) for e in p.terms}
    if len(degs) > 1:
        raise NotHomogeneous(f"{p} mixes degrees {sorted(degs)}")
    return degs.pop() if degs else 0


def substitute_and_grade(p, u0, t_ring=None):
    """Expand p(u) with u_i = u_0 - T_i as sum_n p^(n)(T) u_0^(d - n).

    ``u0`` is the index of the distinguished variable of p.ring. Returns the
    nonzero parts as a list of (n, polynomial in the T variables).
    """
    ring = p.ring
    if t_ring is None:
        t_ring = Ring([t_variable(n[2:] if n.startswith("u_") else n)
                       for k, n in enumerate(ring.names) if k != u0])
    d = _homogeneous_degree(p)
    # work in k[u0, T...] so that the u0-power is tracked explicitly
    big = Ring(("u0",) + t_ring.names)
    base = big.var("u0")
    images, pos = [], 1
    for k in range(len(ring)):
        if k == u0:
            images.append(base)
        else:
            images.append(base - big.monomial([int(j == pos) for j in range(len(big))]))
            pos += 1
    expanded = p.substitute(images, big)
    parts = {}
    for e, c in expanded.terms.items():
        n = d - e[0]
        parts.setdefault(n, {})[e[1:]] = c
    out = [(n, Poly(t_ring, terms)) for n, terms in sorted(parts.items())]
    out = [(n, q) for n, q in out if not q.is_zero]
    if out and out[0][0] == 0:
        raise AssertionError(f"degree-0 part of {p} does not vanish")
    return out


@dataclass
class BaseIdeal:
    """Generators of J in the T variables, with the u_0 choice that produced them."""
    u0: str
    ring: Ring
    generators: list
    source: object = None

    def groebner(self):
        if not hasattr(self, "_gb"):
            self._gb = GroebnerBasis(self.ring, self.generators)
        return self._gb

    def linear_part(self):
        return [g for g in self.generators if g.total_degree() == 1]

    def max_degree(self):
        return max((g.total_degree() for g in self.generators), default=0)


def _check_degree_one(sg):
    ok, witness = sg.is_degree1_generated()
    if not ok:
        raise NotDegreeOneGenerated(
            witness, f"generator {witness.label} has degree {witness.degree}")


def base_ideal(gb, u0=None, check_stability=True):
    """J from a Groebner basis of I_T~ (whose ring carries the generator labels)."""
    sg = getattr(gb, "semigroup", None)
    if sg is not None:
        _check_degree_one(sg)
    names = gb.ring.names
    if u0 is None:
        u0_index = 0
    else:
        key = u0 if u0.startswith("u_") else f"u_{u0}"
        if key not in names:
            raise KeyError(f"unknown generator {u0}")
        u0_index = names.index(key)
    t_ring = Ring([t_variable(n[2:]) for k, n in enumerate(names) if k != u0_index])
    gens = []
    for p in gb.polys:
        gens.extend(q for _, q in substitute_and_grade(p, u0_index, t_ring))
    J = BaseIdeal(names[u0_index][2:], t_ring, gens, gb)
    if check_stability and gens:
        jgb = J.groebner()
        for p in gb.polys:
            for v in gb.ring.gens():
                for _, q in substitute_and_grade(v * p, u0_index, t_ring):
                    if not jgb.contains(q):
                        raise AssertionError(f"coefficients of {v}*({p}) leave J")
    return J


def base_ideal_of(T, u0=None):
    sg = generators_Ttilde(T)
    _check_degree_one(sg)
    gb = toric_ideal(sg)
    gb.semigroup = sg
    return base_ideal(gb, u0)


@dataclass
class BaseSpacePresentation:
    u0: str
    variables: list
    eliminations: dict          # pivot name -> linear Poly in the free variables
    free: list
    relations: list             # reduced relations in the free variables
    tangent_dim: int
    ring: Ring = field(repr=False, default=None)

    def strings(self):
        elim = {k: format_poly(v) for k, v in self.eliminations.items()}
        return {
            "u0": self.u0,
            "variables": list(self.variables),
            "eliminations": elim,
            "free": list(self.free),
            "relations": [format_poly(r) for r in self.relations],
            "tangent_dim": self.tangent_dim,
        }


def reduce_presentation(J, pivot_priority=None):
    """Eliminate the variables solved by the linear part of J.

    ``pivot_priority`` lists T-variable names to eliminate first; the
    remaining variables follow in ring order.
    """
    names = list(J.ring.names)
    order = list(pivot_priority or []) + [n for n in names if n not in (pivot_priority or [])]
    perm = [names.index(n) for n in order]
    lin = J.linear_part()
    rows = []
    for g in lin:
        row = [0] * len(names)
        for e, c in g.terms.items():
            row[e.index(1)] = c
        rows.append([row[i] for i in perm])
    red, pivots = rref(rows) if rows else ([], [])
    elim_idx = [perm[p] for p in pivots]
    free_idx = [i for i in range(len(names)) if i not in elim_idx]
    free_ring = Ring([names[i] for i in free_idx])
    images = [None] * len(names)
    for i in free_idx:
        images[i] = free_ring.var(names[i])
    eliminations = {}
    for r, p in zip(red, pivots):
        pivot = perm[p]
        expr = free_ring.zero()
        for col, c in enumerate(r):
            var = perm[col]
            if var != pivot and c:
                expr = expr - free_ring.var(names[var]) * c
        images[pivot] = expr
        eliminations[names[pivot]] = expr
    higher = []
    for g in J.generators:
        if g.total_degree() >= 2:
            q = g.substitute(images, free_ring)
            if not q.is_zero:
                higher.append(q)
    relations = GroebnerBasis(free_ring, higher).polys if higher else []
    for q in relations:
        if q.total_degree() < 2 or any(sum(e) < 2 for e in q.terms):
            raise AssertionError(f"relation {q} has a constant or linear term")
    return BaseSpacePresentation(
        u0=J.u0, variables=names, eliminations=eliminations,
        free=list(free_ring.names), relations=relations,
        tangent_dim=len(names) - rank(rows) if rows else len(names), ring=free_ring)


# ---------------------------------------------------------------- W grading

def _monomials(nvars, degree):
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _span_rank(polys, index):
    rows = []
    for p in polys:
        row = [0] * len(index)
        for e, c in p.terms.items():
            row[index[e]] = c
        rows.append(row)
    return rank(rows) if rows else 0


def _homogeneous_components(J):
    comps = []
    for g in J.generators:
        comps.extend(q for q in g.homogeneous_parts([1] * len(J.ring)).values() if not q.is_zero)
    return comps


def _degree_n_spans(J, n, comps):
    """(J_n, (J*m + J_1*k[T])_n) as lists of polynomials of degree n."""
    ring = J.ring
    all_n, small_n = [], []
    for g in comps:
        dg = g.total_degree()
        if dg > n:
            continue
        for e in _monomials(len(ring), n - dg):
            q = ring.monomial(e) * g
            all_n.append(q)
            if n - dg >= 1:
                small_n.append(q)
    return all_n, small_n


@dataclass
class WGrading:
    dims: dict

    def __getitem__(self, n):
        return self.dims.get(n, 0)


def w_grading(J, max_degree=None):
    comps = _homogeneous_components(J)
    top = max_degree or (max((g.total_degree() for g in comps), default=1) + 1)
    dims = {}
    for n in range(2, top + 1):
        index = {e: k for k, e in enumerate(_monomials(len(J.ring), n))}
        all_n, small_n = _degree_n_spans(J, n, comps)
        dims[n] = _span_rank(all_n, index) - _span_rank(small_n, index)
    return WGrading(dims)


def in_Jtilde(p, J):
    """Whether each homogeneous part of p lies in J*(T) + J_1*k[T]."""
    comps = _homogeneous_components(J)
    for n, q in p.homogeneous_parts([1] * len(J.ring)).items():
        if q.is_zero:
            continue
        index = {e: k for k, e in enumerate(_monomials(len(J.ring), n))}
        _, small_n = _degree_n_spans(J, n, comps)
        if _span_rank(small_n, index) != _span_rank(small_n + [q], index):
            return False
    return True


# ---------------------------------------------------------------- tangent check

@dataclass
class TangentReport:
    tangent_dim: int
    dim_T1: int
    krull_dim: int

    @property
    def ok(self):
        return self.tangent_dim == self.dim_T1 and self.krull_dim == self.dim_T1 + 1


def tangent_report(P, u0=None):
    T = TSpace(P)
    sg = generators_Ttilde(T)
    ok, witness = sg.is_degree1_generated()
    if not ok:
        raise HypothesisViolated(witness, f"T~ has generator {witness.label} of degree {witness.degree}")
    gb = toric_ideal(sg)
    gb.semigroup = sg
    pres = reduce_presentation(base_ideal(gb, u0))
    return TangentReport(pres.tangent_dim, T.dim_T1, sg.group_rank())


def verify_tangent(P, u0=None):
    return tangent_report(P, u0).ok
