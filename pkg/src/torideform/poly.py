"""Sparse multivariate polynomials over Q and a Buchberger implementation.

Monomial order: weighted graded reverse lexicographic. Weights default to 1;
``perm`` lists variable indices from largest to smallest, so the last entry
is the variable that grevlex treats as smallest.
"""
from fractions import Fraction
from heapq import heappop, heappush
from math import lcm

from .exactmath import Q
from .exceptions import RingMismatch


class Ring:
    def __init__(self, names, weights=None):
        self.names = tuple(names)
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.names)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names and self.weights == other.weights

    def __hash__(self):
        return hash((self.names, self.weights))

    def __len__(self):
        return len(self.names)

    def var(self, name):
        i = self.names.index(name)
        return Poly(self, {tuple(int(j == i) for j in range(len(self))): Fraction(1)})

    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, exp, coeff=1):
        return Poly(self, {tuple(exp): Q(coeff)})

    def one(self):
        return self.monomial((0,) * len(self))

    def zero(self):
        return Poly(self, {})


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: Q(c) for e, c in terms.items() if c != 0}

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.one() * other
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            k = Q(other)
            return Poly(self.ring, {e: k * c for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def total_degree(self, weights=None):
        w = weights or self.ring.weights
        return max((sum(a * b for a, b in zip(e, w)) for e in self.terms), default=-1)

    def is_homogeneous(self, weights=None):
        w = weights or self.ring.weights
        return len({sum(a * b for a, b in zip(e, w)) for e in self.terms}) <= 1

    def homogeneous_parts(self, weights=None):
        w = weights or self.ring.weights
        out = {}
        for e, c in self.terms.items():
            d = sum(a * b for a, b in zip(e, w))
            out.setdefault(d, {})[e] = c
        return {d: Poly(self.ring, t) for d, t in sorted(out.items())}

    def substitute(self, images, ring):
        """Replace variable i by the polynomial images[i] (all in ``ring``)."""
        out = ring.zero()
        powers = {}
        for e, c in self.terms.items():
            term = ring.one() * c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def specialize(self, values):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                t *= Q(v) ** k
            total += t
        return total

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def format_monomial(names, e):
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts) if parts else "1"


def format_poly(p, order=None):
    if p.is_zero:
        return "0"
    order = order or MonomialOrder(p.ring)
    exps = sorted(p.terms, key=order.key, reverse=True)
    out = []
    for k, e in enumerate(exps):
        c = p.terms[e]
        mono = format_monomial(p.ring.names, e)
        mag = abs(c)
        if mono == "1":
            body = f"{mag}"
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class MonomialOrder:
    """Weighted grevlex; ``perm`` gives variables from largest to smallest."""

    def __init__(self, ring, weights=None, perm=None):
        self.ring = ring
        self.weights = tuple(weights) if weights is not None else ring.weights
        self.perm = tuple(perm) if perm is not None else tuple(range(len(ring)))
        # integer weights compare much faster than Fractions
        scale = lcm(*(Q(w).denominator for w in self.weights)) if self.weights else 1
        self._int_weights = tuple(int(Q(w) * scale) for w in self.weights)
        self._rev = tuple(reversed(self.perm))

    def key(self, e):
        deg = sum(a * b for a, b in zip(e, self._int_weights))
        return (deg, tuple(-e[i] for i in self._rev))

    def lead(self, p):
        e = max(p.terms, key=self.key)
        return e, p.terms[e]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(p, order):
    if p.is_zero:
        return p
    _, c = order.lead(p)
    return p * (1 / c)


def _mono_times(p, e, c):
    return Poly(p.ring, {tuple(a + b for a, b in zip(x, e)): c * k for x, k in p.terms.items()})


def reduce_poly(f, basis, order):
    """Full normal form of f by ``basis`` (list of monic polys with cached leads)."""
    leads = [order.lead(g)[0] for g in basis]
    rem = {}
    p = dict(f.terms)
    while p:
        e = max(p, key=order.key)
        c = p[e]
        for g, lg in zip(basis, leads):
            if _divides(lg, e):
                q = tuple(a - b for a, b in zip(e, lg))
                for x, k in g.terms.items():
                    y = tuple(a + b for a, b in zip(x, q))
                    v = p.get(y, 0) - c * k
                    if v:
                        p[y] = v
                    else:
                        p.pop(y, None)
                break
        else:
            rem[e] = c
            del p[e]
    return Poly(f.ring, rem)


def buchberger(polys, order):
    """Reduced Groebner basis with the product and chain criteria."""
    G = []
    for f in polys:
        f = reduce_poly(f, G, order) if G else f
        if not f.is_zero:
            G.append(_monic(f, order))
    state = _PairState(order)
    for f in G:
        state.add(f)
    while state.heap:
        _, i, j = heappop(state.heap)
        state.pending.discard((i, j))
        li, lj = state.leads[i], state.leads[j]
        L = _lcm(li, lj)
        if state.chain_skip(i, j, L):
            continue
        s = _mono_times(state.basis[i], tuple(a - b for a, b in zip(L, li)), Fraction(1)) - \
            _mono_times(state.basis[j], tuple(a - b for a, b in zip(L, lj)), Fraction(1))
        h = reduce_poly(s, state.basis, order)
        if not h.is_zero:
            state.add(_monic(h, order))
    return reduce_basis(state.basis, order)


class _PairState:
    def __init__(self, order):
        self.order = order
        self.basis, self.leads = [], []
        self.heap, self.pending = [], set()

    def add(self, f):
        lf = self.order.lead(f)[0]
        k = len(self.basis)
        self.basis.append(f)
        self.leads.append(lf)
        for i in range(k):
            if all(min(a, b) == 0 for a, b in zip(self.leads[i], lf)):
                continue  # product criterion
            heappush(self.heap, (self.order.key(_lcm(self.leads[i], lf)), i, k))
            self.pending.add((i, k))

    def chain_skip(self, i, j, L):
        for k, lk in enumerate(self.leads):
            if k in (i, j) or not _divides(lk, L):
                continue
            if (min(i, k), max(i, k)) not in self.pending and (min(j, k), max(j, k)) not in self.pending:
                return True
        return False


def reduce_basis(G, order):
    G = [_monic(g, order) for g in G if not g.is_zero]
    leads = [order.lead(g)[0] for g in G]
    keep = []
    for k, (g, lg) in enumerate(zip(G, leads)):
        dominated = False
        for m, lm in enumerate(leads):
            if m == k:
                continue
            if _divides(lm, lg) and (lm != lg or m < k):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for k, g in enumerate(keep):
        others = keep[:k] + keep[k + 1:]
        out.append(_monic(reduce_poly(g, others, order), order) if others else g)
    out = [g for g in out if not g.is_zero]
    out.sort(key=lambda g: order.key(order.lead(g)[0]))
    return out


class GroebnerBasis:
    """Reduced Groebner basis in a fixed ring and monomial order."""

    def __init__(self, ring, polys, order=None, computed=False):
        self.ring = ring
        self.order = order or MonomialOrder(ring)
        for p in polys:
            if p.ring != ring:
                raise RingMismatch("generator outside the basis ring")
        self.polys = list(polys) if computed else buchberger(list(polys), self.order)

    def normal_form(self, f):
        if f.ring != self.ring:
            raise RingMismatch("polynomial ring differs from the basis ring")
        return reduce_poly(f, self.polys, self.order) if self.polys else f

    def contains(self, f):
        return self.normal_form(f).is_zero

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.polys)

    def same_ideal(self, other):
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def strings(self):
        return [format_poly(p, self.order) for p in self.polys]

    def max_degree(self):
        return max((p.total_degree(self.order.weights) for p in self.polys), default=0)


def normal_form(f, gb):
    return gb.normal_form(f)


def embed(p, ring):
    """Re-express p in a ring whose variable names contain p's."""
    idx = [ring.names.index(n) for n in p.ring.names]
    out = {}
    for e, c in p.terms.items():
        new = [0] * len(ring)
        for i, k in zip(idx, e):
            new[i] = k
        out[tuple(new)] = c
    return Poly(ring, out)
