"""Toric ideals of the semigroups, the binomials f_k and F_k, their syzygies,
loop equations along closed edge paths, and the local ideals of T~_d.

Variables are named after semigroup generators: ``u_<label>`` for generators
of T~ (or T~_d) and ``x<k>`` for the Hilbert-basis lifts of S~.
"""
import re
from dataclasses import dataclass, field

from .exactmath import integer_kernel, transpose
from .exceptions import (
    NotDegreeOneGenerated, NotPositivelyGraded, OpenPath, UnrepresentableFactor,
)
from .monoid import MonoidData, _bezout, generators_Ttilde, submonoid_Td
from .poly import GroebnerBasis, MonomialOrder, Poly, Ring, buchberger, format_poly
from .tstar import t_of

_HILBERT_LABEL = re.compile(r"x\d+$")


def variable_name(label):
    return label if _HILBERT_LABEL.match(label) else f"u_{label}"


def semigroup_ring(sg, weights=None):
    return Ring([variable_name(lbl) for lbl in sg.labels],
                weights if weights is not None else sg.degrees)


def monomial_of(ring, exponents, offset=0):
    e = [0] * len(ring)
    for k, m in enumerate(exponents):
        e[offset + k] += m
    return ring.monomial(e)


def binomial(ring, plus, minus):
    """u^plus - u^minus for integer exponent vectors over the whole ring."""
    return ring.monomial(plus) - ring.monomial(minus)


# ---------------------------------------------------------------- toric ideals

def _saturate_variable(polys, ring, weights, var):
    # grevlex with `var` smallest: for homogeneous f, var | lead(f) iff var | f
    perm = [i for i in range(len(ring)) if i != var] + [var]
    order = MonomialOrder(ring, weights, perm)
    out = []
    for g in buchberger(polys, order):
        k = min(e[var] for e in g.terms)
        if k:
            g = Poly(ring, {e[:var] + (e[var] - k,) + e[var + 1:]: c for e, c in g.terms.items()})
        out.append(g)
    return out


def lattice_ideal(ring, kernel_basis, weights):
    """(u^{a+} - u^{a-} : a in basis) saturated by the product of all variables."""
    polys = []
    for a in kernel_basis:
        plus = tuple(max(x, 0) for x in a)
        minus = tuple(max(-x, 0) for x in a)
        polys.append(binomial(ring, plus, minus))
    if not polys:
        return []
    for var in range(len(ring)):
        polys = _saturate_variable(polys, ring, weights, var)
    return polys


def toric_ideal(sg, weights=None):
    """Reduced Groebner basis of the kernel of k[u] -> k[sg]."""
    weights = list(weights) if weights is not None else list(sg.degrees)
    for g, w in zip(sg.generators, weights):
        if w <= 0:
            raise NotPositivelyGraded(f"generator {g.label} has degree {w}")
    ring = semigroup_ring(sg, weights)
    if not len(sg):
        return GroebnerBasis(ring, [], computed=True)
    kernel = integer_kernel(transpose([list(c) for c in sg.coordinates]), ncols=len(sg))
    polys = lattice_ideal(ring, kernel, weights)
    return GroebnerBasis(ring, polys)


def ttilde_ideal(T, sg=None):
    sg = sg if sg is not None else generators_Ttilde(T)
    return toric_ideal(sg)


def stilde_ideal(data):
    sg = data.generators_Stilde()
    weights = [data.s_weight(tuple(g.element.c) + (g.element.degree,)) for g in sg.generators]
    return toric_ideal(sg, weights)


# ---------------------------------------------------------------- f_k, F_k

class BinomialFactory:
    """f_k, F_k and their syzygies for one full-dimensional polyhedron."""

    def __init__(self, T, data=None):
        self.T = T
        self.data = data or MonoidData(T)
        self.r = self.data.r
        xs = [f"x{k + 1}" for k in range(self.r)]
        self.t_ring = Ring(["t"] + xs, [1] + [0] * self.r)
        self.ttilde = self.data.ttilde
        self.u_names = [variable_name(lbl) for lbl in self.ttilde.labels]
        self.u_ring = Ring(self.u_names + xs, list(self.ttilde.degrees) + [0] * self.r)
        self._lt = {}

    def x_monomial(self, ring, k, extra=None):
        e = [0] * len(ring)
        offset = len(ring) - self.r
        for i, m in enumerate(k):
            e[offset + i] += m
        if extra:
            for i, m in enumerate(extra):
                e[i] += m
        return ring.monomial(e)

    def boundary(self, k):
        return self.data.boundary_index(k)

    def lam(self, k):
        return self.data.lam(k)

    def lambda_tilde(self, k):
        k = tuple(k)
        if k not in self._lt:
            self._lt[k] = self.data.lambda_tilde(k)
        return self._lt[k]

    def u_exponents(self, element):
        rep = self.ttilde.exponent_vector(element)
        if rep is None:
            raise UnrepresentableFactor(f"{element} is not in the span of the T~ generators")
        return rep

    def f(self, k):
        k = tuple(k)
        return self.x_monomial(self.t_ring, k) - \
            self.x_monomial(self.t_ring, self.boundary(k), [self.lam(k)])

    def F(self, k):
        k = tuple(k)
        lt = self.u_exponents(self.lambda_tilde(k))
        return self.x_monomial(self.u_ring, k) - self.x_monomial(self.u_ring, self.boundary(k), lt)

    def specialize_to_t(self, p):
        """u_i -> t^{deg u_i}, x_k -> x_k."""
        images = [self.t_ring.var("t") ** int(d) for d in self.ttilde.degrees]
        images += [self.t_ring.var(f"x{k + 1}") for k in range(self.r)]
        return p.substitute(images, self.t_ring)

    # syzygies
    def R(self, a, k):
        a, k = tuple(a), tuple(k)
        b = self.boundary(k)
        ak = tuple(x + y for x, y in zip(a, k))
        ba = tuple(x + y for x, y in zip(b, a))
        el = SyzygyElement("e", self.t_ring)
        el.add(ak, self.t_ring.one())
        el.add(k, -self.x_monomial(self.t_ring, a))
        el.add(ba, -self.x_monomial(self.t_ring, (0,) * self.r, [self.lam(k)]))
        image = el.image(self.f)
        if not image.is_zero:
            raise AssertionError(f"R_{a},{k} does not map to zero: {image}")
        return el

    def R_tilde(self, a, k, ideal=None):
        """Lifted syzygy; its image vanishes modulo I_T~ (checked when ``ideal`` is given)."""
        a, k = tuple(a), tuple(k)
        b = self.boundary(k)
        ak = tuple(x + y for x, y in zip(a, k))
        ba = tuple(x + y for x, y in zip(b, a))
        el = SyzygyElement("E", self.u_ring)
        el.add(ak, self.u_ring.one())
        el.add(k, -self.x_monomial(self.u_ring, a))
        lt = self.u_exponents(self.lambda_tilde(k))
        el.add(ba, -self.x_monomial(self.u_ring, (0,) * self.r, lt))
        if ideal is not None:
            image = el.image(self.F)
            if not ideal.contains(image):
                raise AssertionError(f"R~_{a},{k} image is not in I_T~: {image}")
        return el

    def embedded_ttilde_ideal(self, gb):
        """A Groebner basis of I_T~ viewed inside k[u, x] (still a Groebner basis there)."""
        polys = [Poly(self.u_ring, {e + (0,) * self.r: c for e, c in p.terms.items()}) for p in gb.polys]
        order = MonomialOrder(self.u_ring)
        return GroebnerBasis(self.u_ring, polys, order, computed=True)


@dataclass
class SyzygyElement:
    """Formal sum of basis symbols e_k (or E_k) with polynomial coefficients."""
    symbol: str
    ring: Ring
    terms: dict = field(default_factory=dict)

    def add(self, k, coeff):
        k = tuple(k)
        total = self.terms.get(k, self.ring.zero()) + coeff
        if total.is_zero:
            self.terms.pop(k, None)
        else:
            self.terms[k] = total

    def image(self, psi):
        out = self.ring.zero()
        for k, c in self.terms.items():
            out = out + c * psi(k)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items()):
            parts.append(f"({format_poly(c)})*{self.symbol}{list(k)}")
        return " + ".join(parts)


def f_binomial(T, k, factory=None):
    return (factory or BinomialFactory(T)).f(k)


def F_binomial(T, k, factory=None):
    return (factory or BinomialFactory(T)).F(k)


def syzygy_R(T, a, k, factory=None):
    return (factory or BinomialFactory(T)).R(a, k)


def syzygy_R_tilde(T, a, k, factory=None, ideal=None):
    return (factory or BinomialFactory(T)).R_tilde(a, k, ideal)


# ---------------------------------------------------------------- loop equations

def _coefficients(P, mu):
    return tuple(mu.coefficients) if hasattr(mu, "coefficients") else tuple(mu)


def loop_terms(T, mu, c):
    """Split a closed path by the sign of <mu_e d_e, c>.

    Returns (plus, minus) as lists of (t(c, d_e), |mu_e|). Each traversal of
    an edge contributes one copy of t(c, d_e); the s-terms then telescope
    around the loop and the t-terms cancel by the 2-face equations.
    """
    P = T.P
    coeffs = _coefficients(P, mu)
    if P.path_boundary(coeffs):
        raise OpenPath(f"edge path {coeffs} has nonzero boundary")
    c = tuple(c)
    plus, minus = [], []
    for e, m in zip(P.edges, coeffs):
        if not m:
            continue
        el = t_of(T, c, e)
        pairing = m * sum(a * b for a, b in zip(c, e.direction))
        (plus if pairing > 0 else minus).append((el, abs(m)))
    lhs = T.zero()
    for el, m in plus:
        lhs = lhs + el * m
    for el, m in minus:
        lhs = lhs - el * m
    if not lhs.is_zero:
        raise AssertionError(f"loop relation fails for mu={coeffs}, c={c}: {lhs}")
    return plus, minus


def loop_equation(T, mu, c, sg=None):
    """p(mu, c) = prod over S+ of u(t(c, d))^|mu| - prod over S- of the same."""
    sg = sg if sg is not None else generators_Ttilde(T)
    ring = semigroup_ring(sg)
    plus, minus = loop_terms(T, mu, c)

    def product_of(terms):
        total = [0] * len(sg)
        for el, m in terms:
            if el.is_zero:
                continue
            rep = sg.exponent_vector(el)
            if rep is None:
                raise UnrepresentableFactor(f"{el} is not a combination of T~ generators")
            total = [a + m * b for a, b in zip(total, rep)]
        return ring.monomial(total)
    return product_of(plus) - product_of(minus)


def face_loops(P):
    """Edge-coefficient vectors of the boundaries of the compact 2-faces."""
    out = []
    for face in P.two_faces:
        coeffs = [0] * len(P.edges)
        for nu, sign in face.cycle:
            coeffs[nu] += sign
        out.append(tuple(coeffs))
    return out


# ---------------------------------------------------------------- local ideals

def local_ideal(T, edge):
    sg = submonoid_Td(T, edge)
    ok, witness = sg.is_degree1_generated()
    if not ok:
        raise NotDegreeOneGenerated(
            witness, f"T~_d has generator {witness.label} of degree {witness.degree}")
    gb = toric_ideal(sg)
    gb.semigroup = sg
    return gb


def local_pattern(T, edge, sg, swap=True):
    """The edge equations in the x_k, y_k pattern, expressed in the generators of sg.

    x_k = t(k c, d), y_k = t(-k c, d) with <c, d> the least positive value on M;
    x_0, y_0 are the vertex generators (s_j, s_i when ``swap``, else s_i, s_j).
    Returns None when an endpoint is a lattice vertex.
    """
    e = T.P.edges[edge] if isinstance(edge, int) else edge
    if e.i in T.lattice_vertices or e.j in T.lattice_vertices:
        return None
    m = tuple(_bezout([int(x) for x in e.primitive_direction]))
    first, second = (e.j, e.i) if swap else (e.i, e.j)
    xs, ys = [T.s(first)], [T.s(second)]
    for seq, sign in ((xs, 1), (ys, -1)):
        k = 1
        while True:
            el = t_of(T, tuple(sign * k * x for x in m), e)
            if el.degree != 1:
                break
            seq.append(el)
            k += 1
    ring = semigroup_ring(sg)

    def mono(*els):
        total = [0] * len(sg)
        for el in els:
            rep = sg.exponent_vector(el)
            if rep is None:
                raise UnrepresentableFactor(f"{el} is not in T~_d")
            total = [a + b for a, b in zip(total, rep)]
        return ring.monomial(total)
    out = []
    for seq in (xs, ys):
        top = len(seq) - 1
        pairs = {}
        for k1 in range(top + 1):
            for k2 in range(k1, top + 1):
                pairs.setdefault(k1 + k2, []).append((k1, k2))
        for s, group in pairs.items():
            if not 1 <= s <= top:
                continue
            for (k1, k2), (l1, l2) in zip(group, group[1:]):
                out.append(mono(seq[k1], seq[k2]) - mono(seq[l1], seq[l2]))
    for k in range(1, min(len(xs), len(ys))):
        out.append(mono(xs[k], ys[0]) - mono(ys[k], xs[0]))
    return [p for p in out if not p.is_zero]


def pattern_check(T, edge, gb=None):
    """For each index convention: (pattern inside the ideal, pattern generates the ideal)."""
    gb = gb or local_ideal(T, edge)
    sg = gb.semigroup
    out = {}
    for swap in (True, False):
        pat = local_pattern(T, edge, sg, swap)
        if pat is None:
            out[swap] = None
            continue
        inside = all(gb.contains(p) for p in pat)
        span = GroebnerBasis(gb.ring, pat) if pat else GroebnerBasis(gb.ring, [], computed=True)
        out[swap] = (inside, inside and span.contains_ideal(gb))
    return out


def normal_form(f, gb):
    return gb.normal_form(f)
