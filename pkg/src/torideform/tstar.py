"""The space T(P) of edge/vertex dilations, its lattice, and the dual elements
t(c, d), eta~(c), eta~_Z(c).

Coordinates on the ambient space are ordered edges first, then vertices. An
element of the dual is stored as a formal coefficient vector; two elements are
equal when they agree on T(P), which is decided by evaluating on a Z-basis of
T_Z(P).
"""
from fractions import Fraction
from math import ceil

from .dualcone import eta, eta_Z
from .exactmath import (
    Q, dot, frac_up, nullspace, solve, solve_congruence_lattice, vsub,
)


class TSpace:
    """T(P) inside R^{edges + vertices}, with T_Z(P) and the element 1 = [P]."""

    def __init__(self, P):
        self.P = P
        self.n_edges = len(P.edges)
        self.n_vertices = len(P.vertices)
        self.ambient = self.n_edges + self.n_vertices
        self.lattice_vertices = frozenset(P.lattice_vertices)
        self.s_representative = self._s_representatives()
        self.equations = self._equations()
        self.basis = nullspace(self.equations, ncols=self.ambient) if self.equations else \
            nullspace([], ncols=self.ambient)
        self.lattice_basis = solve_congruence_lattice(self._integrality_conditions(), self.basis) \
            if self.basis else []
        self.one = tuple(
            [Fraction(1)] * self.n_edges
            + [Fraction(0) if i in self.lattice_vertices else Fraction(1) for i in range(self.n_vertices)])

    def _s_representatives(self):
        # s_i = s_j across lattice-free edges; display everything on the smallest index
        rep = list(range(self.n_vertices))

        def find(x):
            while rep[x] != x:
                x = rep[x]
            return x
        for e in self.P.edges:
            if e.lattice_free:
                a, b = find(e.i), find(e.j)
                rep[max(a, b)] = min(a, b)
        return tuple(find(i) for i in range(self.n_vertices))

    # coordinates
    def t_index(self, nu):
        return nu

    def s_index(self, i):
        return self.n_edges + i

    def coordinate_names(self):
        t = ["t"] if self.n_edges == 1 else [f"t{k + 1}" for k in range(self.n_edges)]
        return t + [f"s{i + 1}" for i in range(self.n_vertices)]

    def _row(self):
        return [Fraction(0)] * self.ambient

    def _equations(self):
        P = self.P
        rows = []
        for face in P.two_faces:
            for k in range(P.n):
                row = self._row()
                for nu, sign in face.cycle:
                    row[nu] += sign * P.edges[nu].direction[k]
                if any(row):
                    rows.append(row)
        for i in self.lattice_vertices:
            row = self._row()
            row[self.s_index(i)] = Fraction(1)
            rows.append(row)
        for e in P.edges:
            if e.lattice_free:
                row = self._row()
                row[self.s_index(e.i)] += 1
                row[self.s_index(e.j)] -= 1
                rows.append(row)
            for short, vert in ((e.short_left, e.i), (e.short_right, e.j)):
                if short:
                    row = self._row()
                    row[self.s_index(vert)] += 1
                    row[e.index] -= 1
                    rows.append(row)
        return rows

    def _integrality_conditions(self):
        P = self.P
        rows = []
        for i in range(self.n_vertices):
            row = self._row()
            row[self.s_index(i)] = Fraction(1)
            rows.append(row)
        for e in P.edges:
            # (t - s_i) v^i - (t - s_j) v^j  =  t (v^i - v^j) - s_i v^i + s_j v^j
            for k in range(P.n):
                row = self._row()
                row[e.index] = e.v[k] - e.w[k]
                row[self.s_index(e.i)] -= e.v[k]
                row[self.s_index(e.j)] += e.w[k]
                rows.append(row)
        return rows

    @property
    def dim(self):
        return len(self.basis)

    @property
    def dim_T1(self):
        # T(P) / <1>; for a single lattice vertex the class 1 = [P] is zero
        return self.dim - (1 if any(self.one) else 0)

    # elements
    def element(self, coeffs=None):
        return TStarElement(self, coeffs if coeffs is not None else self._row())

    def zero(self):
        return TStarElement(self, self._row())

    def t(self, nu, k=1):
        row = self._row()
        row[nu] = Q(k)
        return TStarElement(self, row)

    def s(self, i, k=1):
        row = self._row()
        row[self.s_index(i)] = Q(k)
        return TStarElement(self, row)

    def from_eval(self, values):
        """Element with the given integer/rational values on the T_Z basis."""
        x = solve(self.lattice_basis, list(values))
        if x is None:
            raise ValueError("values are not realizable")
        return TStarElement(self, list(x))


class TStarElement:
    __slots__ = ("space", "coeffs", "values")

    def __init__(self, space, coeffs):
        coeffs = [Q(x) for x in coeffs]
        for i in space.lattice_vertices:
            coeffs[space.s_index(i)] = Fraction(0)
        for i, r in enumerate(space.s_representative):
            if r != i and coeffs[space.s_index(i)]:
                coeffs[space.s_index(r)] += coeffs[space.s_index(i)]
                coeffs[space.s_index(i)] = Fraction(0)
        self.space = space
        self.coeffs = tuple(coeffs)
        self.values = tuple(dot(self.coeffs, b) for b in space.lattice_basis)

    def __add__(self, other):
        return TStarElement(self.space, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return TStarElement(self.space, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TStarElement(self.space, [-a for a in self.coeffs])

    def __mul__(self, k):
        k = Q(k)
        return TStarElement(self.space, [k * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero
        return isinstance(other, TStarElement) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    @property
    def is_zero(self):
        return not any(self.values)

    @property
    def degree(self):
        """pi: t -> 1, s_v -> 1 for non-lattice v; equals evaluation at 1 = [P]."""
        return dot(self.coeffs, self.space.one)

    @property
    def is_integral(self):
        return all(x.denominator == 1 for x in self.values)

    @property
    def coords(self):
        return tuple(int(x) for x in self.values)

    def formal(self):
        names = self.space.coordinate_names()
        return {n: c for n, c in zip(names, self.coeffs) if c}

    def __repr__(self):
        return f"TStarElement({format_formal(self.formal())})"

    def __str__(self):
        return format_formal(self.formal())


def format_formal(terms):
    if not terms:
        return "0"
    out = []
    for name, c in terms.items():
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag}"
        sign = "-" if c < 0 else "+"
        out.append((sign, f"{coef}{name}"))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def build_tspace(P):
    return TSpace(P)


def dim_T1(P):
    return TSpace(P).dim_T1


def degree_pi(x):
    return x.degree


def lattice_membership(x):
    return x.is_integral


def t_of(T, c, edge):
    """t(c, d) with orientation chosen so the t-coefficient is nonnegative."""
    if isinstance(edge, int):
        edge = T.P.edges[edge]
    c = tuple(Q(x) for x in c)
    x = dot(c, edge.direction)
    if x == 0:
        return T.zero()
    cv, cw = dot(c, edge.v), dot(c, edge.w)
    row = T._row()
    if x > 0:
        row[edge.index] = x
        row[T.s_index(edge.j)] += frac_up(cw)
        row[T.s_index(edge.i)] -= frac_up(cv)
    else:
        row[edge.index] = -x
        row[T.s_index(edge.i)] += frac_up(cv)
        row[T.s_index(edge.j)] -= frac_up(cw)
    return TStarElement(T, row)


def t_along(T, c, a, b):
    """t(c, v^b - v^a) for adjacent vertices a, b."""
    return t_of(T, c, T.P.adjacency[(a, b)])


def eta_tilde(T, c, path=None):
    """-<v*, c> s_{v*} - sum over the path v* -> v(c) of <step, c> t_step."""
    P = T.P
    c = tuple(Q(x) for x in c)
    seq = path if path is not None else P.path_lambda(c).steps
    vstar = P.reference_vertex
    row = T._row()
    row[T.s_index(vstar)] -= dot(P.vertices[vstar], c)
    for a, b in zip(seq, seq[1:]):
        e = P.adjacency[(a, b)]
        row[e] -= dot(vsub(P.vertices[b], P.vertices[a]), c)
    return TStarElement(T, row)


def eta_tilde_Z(T, c, path=None):
    P = T.P
    c = tuple(Q(x) for x in c)
    seq = path if path is not None else P.path_lambda(c).steps
    end = seq[-1]
    corr = eta_Z(P, c) - eta(P, c)
    return eta_tilde(T, c, seq) + T.s(end, corr)


def eta_tilde_Z_pair(T, c1, c2):
    c = tuple(Q(a) + Q(b) for a, b in zip(c1, c2))
    return eta_tilde_Z(T, c1) + eta_tilde_Z(T, c2) - eta_tilde_Z(T, c)


def path_delta(c, step):
    """+1 if <c, step> > 0, else -1."""
    return 1 if dot(c, step) > 0 else -1


def telescoped_t_sum(T, c, seq):
    """sum_i delta_i(c) t(c, v^i - v^{i-1}) along a vertex sequence."""
    P = T.P
    total = T.zero()
    for a, b in zip(seq, seq[1:]):
        step = vsub(P.vertices[b], P.vertices[a])
        total = total + path_delta(c, step) * t_along(T, c, a, b)
    return total


def eta_tilde_Z_via_t(T, c, path=None):
    """eta~_Z(c) rebuilt from t-elements: ceil(<-c, v*>) s_{v*} + telescoped t(-c, .) sum."""
    P = T.P
    c = tuple(Q(x) for x in c)
    seq = path if path is not None else P.path_lambda(c).steps
    neg = tuple(-x for x in c)
    vstar = seq[0]
    return T.s(vstar, ceil(dot(neg, P.vertices[vstar]))) + telescoped_t_sum(T, neg, seq)
