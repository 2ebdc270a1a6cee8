"""Rational polyhedra: face data, edge invariants, paths and clusters."""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm

from .dualcone import cone_faces, cone_facets
from .exactmath import Q, dot, hnf, is_integral, primitive, qvec, rank, vsub
from .exceptions import EmptyInput, NotAVertex, NotLowerBounded


@dataclass(frozen=True)
class CompactEdge:
    index: int
    i: int
    j: int
    v: tuple
    w: tuple
    direction: tuple
    primitive_direction: tuple
    g_d: int
    lattice_length: Fraction
    count_left: int      # lattice points on g_d * [v, w)
    count_right: int     # lattice points on g_d * [w, v)
    lattice_free: bool   # [v, w] contains no lattice point

    @property
    def short_left(self):
        return self.count_left <= self.g_d - 1

    @property
    def short_right(self):
        return self.count_right <= self.g_d - 1

    def is_k_short(self, k):
        bound = (k + 1) * self.g_d
        return self.count_left < bound and self.count_right < bound

    @property
    def shortness_index(self):
        """Least k such that the edge (both half-open sides) is k-short."""
        return max(self.count_left // self.g_d, self.count_right // self.g_d)

    @property
    def side_indices(self):
        """Precise shortness of [v, w) and of [w, v)."""
        return (self.count_left // self.g_d, self.count_right // self.g_d)

    @property
    def endpoints(self):
        return (self.i, self.j)


@dataclass(frozen=True)
class TwoFace:
    vertices: tuple
    cycle: tuple   # ((edge index, +1/-1), ...) in traversal order


def _edge_data(index, i, j, v, w):
    d = vsub(w, v)
    e = primitive(d)
    _, u = hnf([[x] for x in e])
    uv = [dot(row, v) for row in u]
    uw = [dot(row, w) for row in u]
    length = uw[0] - uv[0]
    g = lcm(1, *(x.denominator for x in uv[1:]))
    a, b = g * uv[0], g * uw[0]
    left = ceil(b) - ceil(a)
    right = floor(b) - floor(a)
    if g == 1:
        free = floor(uw[0]) < ceil(uv[0])
    else:
        free = True
    return CompactEdge(index, i, j, v, w, d, e, g, length, left, right, free)


def compute_gd(edge):
    return edge.g_d


def shortness(edge):
    return edge.short_left, edge.short_right, edge.shortness_index


@dataclass(frozen=True)
class EdgePath:
    coefficients: tuple
    start: int
    end: int
    steps: tuple = ()   # vertex sequence, kept for telescoping formulas

    def __add__(self, other):
        return EdgePath(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
                        self.start, other.end, self.steps + other.steps[1:])


@dataclass
class RationalPolyhedron:
    n: int
    vertices: tuple
    tail_rays: tuple
    translation: tuple
    facets: tuple = ()          # (a, b): <a, x> >= b
    equations: tuple = ()       # (a, b): <a, x> == b
    edges: tuple = ()
    two_faces: tuple = ()
    full_dimensional: bool = True
    input_order: tuple = ()     # input index of each stored vertex
    adjacency: dict = field(default_factory=dict)

    @property
    def lattice_rank(self):
        return self.n

    @property
    def is_full_dimensional(self):
        return self.full_dimensional

    def is_lattice_vertex(self, i):
        return is_integral(self.vertices[i])

    @property
    def lattice_vertices(self):
        return [i for i in range(len(self.vertices)) if self.is_lattice_vertex(i)]

    @property
    def reference_vertex(self):
        """v*: the origin when some vertex is a lattice point, else the lex smallest vertex."""
        zero = tuple(Fraction(0) for _ in range(self.n))
        if zero in self.vertices:
            return self.vertices.index(zero)
        return 0

    def edge_between(self, i, j):
        return self.adjacency.get((i, j))

    def neighbours(self, i):
        return sorted(b for (a, b) in self.adjacency if a == i)

    def path_lambda(self, a):
        """Path v* to v(a) along compact edges (BFS, lex tie-break)."""
        return self.shortest_path(self.reference_vertex, self._v_of(a))

    def path_mu(self, start, c):
        """c-descent path from ``start`` to v(c): every step has <c, step> <= 0."""
        target = self._v_of(c)
        seq = [start]
        cur = start
        while True:
            val = dot(c, self.vertices[cur])
            better = [k for k in self.neighbours(cur) if dot(c, self.vertices[k]) < val]
            if not better:
                break
            cur = min(better)
            seq.append(cur)
        level = dot(c, self.vertices[cur])
        rest = self._bfs(cur, target, lambda k: dot(c, self.vertices[k]) == level)
        return self._path_from_sequence(seq[:-1] + rest)

    def shortest_path(self, start, end):
        return self._path_from_sequence(self._bfs(start, end, lambda k: True))

    def _bfs(self, start, end, allowed):
        prev = {start: None}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            if x == end:
                break
            for y in self.neighbours(x):
                if y not in prev and allowed(y):
                    prev[y] = x
                    queue.append(y)
        if end not in prev:
            raise ValueError(f"no compact path from vertex {start} to {end}")
        seq = [end]
        while prev[seq[-1]] is not None:
            seq.append(prev[seq[-1]])
        return seq[::-1]

    def _path_from_sequence(self, seq):
        coeff = [0] * len(self.edges)
        for a, b in zip(seq, seq[1:]):
            e = self.adjacency[(a, b)]
            coeff[e] += 1 if self.edges[e].i == a else -1
        return EdgePath(tuple(coeff), seq[0], seq[-1], tuple(seq))

    def _v_of(self, c):
        if any(dot(r, c) < 0 for r in self.tail_rays):
            raise NotLowerBounded(f"{tuple(c)} is not bounded below on P")
        vals = [dot(v, c) for v in self.vertices]
        return vals.index(min(vals))

    def path_boundary(self, coefficients):
        """Boundary 0-chain of an edge path, as a dict vertex -> multiplicity."""
        out = {}
        for e, k in zip(self.edges, coefficients):
            if k:
                out[e.j] = out.get(e.j, 0) + k
                out[e.i] = out.get(e.i, 0) - k
        return {v: k for v, k in out.items() if k}


def build_polyhedron(vertices, tail_rays=(), lattice_rank=None, normalize=True):
    """Validate the V-representation and derive facets, compact edges and 2-faces.

    With ``normalize`` the polyhedron is shifted so that its lexicographically
    smallest lattice vertex (if any) sits at the origin; the shift is kept in
    ``translation``.
    """
    if not vertices:
        raise EmptyInput("a polyhedron needs at least one vertex")
    verts = [qvec(v) for v in vertices]
    n = lattice_rank if lattice_rank is not None else len(verts[0])
    if any(len(v) != n for v in verts):
        raise EmptyInput("vertex dimensions disagree with lattice_rank")
    rays = []
    for r in tail_rays:
        r = qvec(r)
        if len(r) != n or not any(r):
            raise EmptyInput("tail rays must be nonzero vectors of the lattice rank")
        rays.append(primitive(r))

    gens = [v + (Fraction(1),) for v in verts] + [tuple(Q(x) for x in r) + (Fraction(0),) for r in rays]
    facets, eqs = cone_facets(gens)
    for idx, v in enumerate(verts):
        if v in verts[:idx]:
            raise NotAVertex(idx, f"listed point #{idx} duplicates an earlier vertex")
        g = gens[idx]
        tight = [f for f in facets if dot(f, g) == 0]
        face = [h for h in gens if all(dot(f, h) == 0 for f in tight)]
        if rank(face) != 1:
            raise NotAVertex(idx)
    # keep only extreme tail rays
    ray_gens = sorted(set(rays))
    extreme_rays = []
    for r in ray_gens:
        g = tuple(Q(x) for x in r) + (Fraction(0),)
        tight = [f for f in facets if dot(f, g) == 0]
        face = [h for h in gens if all(dot(f, h) == 0 for f in tight)]
        if rank(face) == 1:
            extreme_rays.append(r)

    order = sorted(range(len(verts)), key=lambda k: verts[k])
    verts_sorted = [verts[k] for k in order]
    shift = tuple(Fraction(0) for _ in range(n))
    if normalize:
        lattice = [v for v in verts_sorted if is_integral(v)]
        if lattice:
            shift = lattice[0]
    verts_sorted = [vsub(v, shift) for v in verts_sorted]
    return _assemble(n, verts_sorted, extreme_rays, shift, tuple(order))


def _assemble(n, verts, rays, shift, order):
    gens = [tuple(v) + (Fraction(1),) for v in verts] + [tuple(Q(x) for x in r) + (Fraction(0),) for r in rays]
    nv = len(verts)
    facets, eqs = cone_facets(gens)
    faces = cone_faces(gens, facets)
    edges = []
    adjacency = {}
    face_sets = []
    for f in faces:
        if any(k >= nv for k in f):
            continue
        r = rank([gens[k] for k in f])
        if r == 2 and len(f) == 2:
            i, j = sorted(f)
            edges.append((i, j))
        elif r == 3:
            face_sets.append(tuple(sorted(f)))
    edges.sort()
    if n == 2 and edges:
        edges = _boundary_walk_order(edges, verts)
    edge_objs = []
    for idx, (i, j) in enumerate(edges):
        edge_objs.append(_edge_data(idx, i, j, verts[i], verts[j]))
        adjacency[(i, j)] = idx
        adjacency[(j, i)] = idx
    two_faces = []
    for fs in sorted(face_sets):
        two_faces.append(TwoFace(fs, _boundary_cycle(fs, edge_objs, adjacency)))
    h_facets = tuple((tuple(a[:-1]), -a[-1]) for a in facets)
    h_eqs = tuple((tuple(a[:-1]), -a[-1]) for a in eqs)
    full = rank(gens) == n + 1
    return RationalPolyhedron(n, tuple(verts), tuple(rays), tuple(shift), h_facets, h_eqs,
                              tuple(edge_objs), tuple(two_faces), full, order, adjacency)


def _boundary_walk_order(edges, verts):
    """Compact edges of a polygon in counterclockwise order from the smallest vertex."""
    nbrs = {}
    for i, j in edges:
        nbrs.setdefault(i, []).append(j)
        nbrs.setdefault(j, []).append(i)
    ends = sorted(v for v, ws in nbrs.items() if len(ws) == 1)
    start = ends[0] if ends else min(nbrs)
    ws = sorted(nbrs[start])
    nxt = ws[0]
    if len(ws) == 2:
        a, b = (vsub(verts[w], verts[start]) for w in ws)
        nxt = ws[0] if a[0] * b[1] - a[1] * b[0] > 0 else ws[1]
    seq, prev, cur = [], start, nxt
    seq.append(tuple(sorted((start, cur))))
    while len(seq) < len(edges):
        step = [w for w in nbrs[cur] if w != prev]
        if not step:
            break
        prev, cur = cur, step[0]
        seq.append(tuple(sorted((prev, cur))))
    return seq if sorted(seq) == sorted(edges) else edges


def _boundary_cycle(face_vertices, edges, adjacency):
    fv = set(face_vertices)
    nbrs = {v: sorted(w for w in fv if (v, w) in adjacency) for v in fv}
    start = min(fv)
    prev, cur = start, nbrs[start][0]
    seq = [start, cur]
    while cur != start:
        nxt = [w for w in nbrs[cur] if w != prev][0]
        prev, cur = cur, nxt
        seq.append(cur)
    cycle = []
    for a, b in zip(seq, seq[1:]):
        e = adjacency[(a, b)]
        cycle.append((e, 1 if edges[e].i == a else -1))
    return tuple(cycle)


def path_lambda(P, a):
    return P.path_lambda(a)


def path_mu(P, start, c):
    return P.path_mu(start, c)


# ---------------------------------------------------------------- clusters

@dataclass
class ClusterDecomposition:
    A: list   # list of components; each a sorted tuple of cells
    B: list
    D: list   # open edges (edge indices)
    N: list   # lattice vertices
    rho: dict  # component -> identification string

    def cells(self):
        out = []
        for comp in self.A + self.B:
            out.extend(comp)
        out.extend(("edge", d) for d in self.D)
        out.extend(("vertex", v) for v in self.N)
        return out


def cluster_decomposition(P):
    """Partition of the extended 1-skeleton into clusters A, B, D and lattice vertices N.

    Cells are ``("vertex", i)``, ``("edge", nu)`` (an open compact edge) and
    ``("abstract", nu)`` (the abstract edge joining the endpoints of a
    lattice-free edge). Non-lattice vertices are glued across abstract edges
    and across short half-open edges; an open edge with a short side belongs to
    the cluster of its vertex.
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    lattice = set(P.lattice_vertices)
    for i in range(len(P.vertices)):
        if i not in lattice:
            parent[("vertex", i)] = ("vertex", i)
    short_cells = set()
    D = []
    for e in P.edges:
        if e.lattice_free:
            cell = ("abstract", e.index)
            parent[cell] = cell
            union(cell, ("vertex", e.i))
            union(cell, ("vertex", e.j))
        if e.short_left or e.short_right:
            cell = ("edge", e.index)
            parent[cell] = cell
            short_cells.add(cell)
            if e.short_left:
                union(cell, ("vertex", e.i))
            if e.short_right:
                union(cell, ("vertex", e.j))
        else:
            D.append(e.index)
    comps = {}
    for cell in parent:
        comps.setdefault(find(cell), []).append(cell)
    A, B, rho = [], [], {}
    for root in sorted(comps):
        comp = tuple(sorted(comps[root]))
        v = min(c[1] for c in comp if c[0] == "vertex")
        if any(c in short_cells for c in comp):
            B.append(comp)
            d = min(c[1] for c in comp if c in short_cells)
            rho[comp] = f"s{v + 1} = t{d + 1}"
        else:
            A.append(comp)
            rho[comp] = f"s{v + 1}"
    for d in D:
        rho[("edge", d)] = f"t{d + 1}"
    return ClusterDecomposition(A, B, D, sorted(lattice), rho)
