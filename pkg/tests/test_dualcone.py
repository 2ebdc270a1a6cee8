import random
from fractions import Fraction as F
from math import ceil

import pytest
from hypothesis import given, settings, strategies as st

from torideform.dualcone import (
    Cone, cone_over, dual_cone, eta, eta_Z, hilbert_basis, hilbert_basis_of_cone, in_S, v_of,
)
from torideform.exactmath import dot
from torideform.exceptions import NotLowerBounded, NotPointed
from torideform.polyhedron import build_polyhedron
from torideform.verify import random_polyhedron

from conftest import segment


def brute_hilbert(cone, box):
    """Irreducible lattice points of the cone among those with coordinates in [-box, box]."""
    dim = cone.dim
    pts = [p for p in _box(dim, box) if any(p) and cone.contains(p)]
    pset = set(pts)
    return sorted(p for p in pts
                  if not any(q != p and tuple(a - b for a, b in zip(p, q)) in pset for q in pts))


def _box(dim, box):
    if dim == 0:
        yield ()
        return
    for rest in _box(dim - 1, box):
        for x in range(-box, box + 1):
            yield rest + (x,)


def test_cone_over_examples():
    assert cone_over(segment("-1/2", "1/2")).rays == ((-1, 2), (1, 2))
    assert cone_over(segment("-1/2", "1/3")).rays == ((-1, 2), (1, 3))
    assert cone_over(build_polyhedron([(0,)])).rays == ((0, 1),)


def test_dual_examples():
    assert dual_cone(cone_over(segment("-1/2", "1/2"))).rays == ((-2, 1), (2, 1))
    assert dual_cone(cone_over(segment("-1/2", "1/3"))).rays == ((-3, 1), (2, 1))
    full = Cone.from_rays([(1, 0), (-1, 0), (0, 1), (0, -1)])
    d = dual_cone(full)
    assert d.rays == () or all(not any(r) for r in d.rays)


def test_hilbert_examples():
    assert hilbert_basis(segment("-1/2", "1/2")).elements == [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)]
    assert hilbert_basis(segment("-1/2", "1/3")).elements == [
        (-3, 1), (-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)]
    assert hilbert_basis_of_cone(Cone.from_rays([(1, 0), (0, 1)])) == [(0, 1), (1, 0)]


def test_hilbert_needs_pointed():
    with pytest.raises(NotPointed):
        hilbert_basis(build_polyhedron([(F(1, 3),)]))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_dual_pairs_nonnegatively(seed):
    rng = random.Random(seed)
    P = random_polyhedron(rng, 1 + seed % 2)
    sigma = cone_over(P)
    dual = dual_cone(sigma)
    for r in dual.rays:
        assert all(dot(r, g) >= 0 for g in sigma.rays)
    # points pairing nonnegatively with sigma are in the dual
    for _ in range(30):
        x = tuple(rng.randint(-6, 6) for _ in range(sigma.dim))
        assert dual.contains(x) == all(dot(x, g) >= 0 for g in sigma.rays)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_hilbert_basis_matches_brute_force_segments(seed):
    rng = random.Random(seed)
    P = random_polyhedron(rng, 1)
    if not P.is_full_dimensional:
        return
    hb = hilbert_basis(P).elements
    box = max(max(abs(x) for x in h) for h in hb) + 1
    assert hb == brute_hilbert(dual_cone(cone_over(P)), box)


@pytest.mark.parametrize("verts", [
    [(0, 0), (1, 0), (0, 1)],
    [(F(-1, 2), 0), (1, F(1, 3)), (0, 1)],
    [(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)],
])
def test_hilbert_basis_matches_brute_force_polygons(verts):
    P = build_polyhedron(verts)
    hb = hilbert_basis(P).elements
    box = max(max(abs(x) for x in h) for h in hb) + 1
    assert hb == brute_hilbert(dual_cone(cone_over(P)), box)


def test_eta_examples():
    P = segment("-1/2", "1/2")
    assert eta(P, (1,)) == F(1, 2) and eta_Z(P, (1,)) == 1 and P.vertices[v_of(P, (1,))] == (F(-1, 2),)
    assert eta(P, (0,)) == 0 and eta_Z(P, (0,)) == 0


@pytest.mark.parametrize("a1,b1,a2,b2", [(1, 2, 1, 3), (2, 3, 1, 4), (3, 5, 1, 5)])
def test_eta_Z_on_segments(a1, b1, a2, b2):
    P = segment(F(-a1, b1), F(a2, b2))
    for k in range(1, 9):
        assert eta_Z(P, (k,)) == ceil(F(a1 * k, b1))


def test_eta_rejects_unbounded():
    P = build_polyhedron([(0, 0)], tail_rays=[(1, 0), (0, 1)])
    with pytest.raises(NotLowerBounded):
        eta(P, (-1, 0))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_in_S_is_the_lifted_dual(seed):
    rng = random.Random(seed)
    P = random_polyhedron(rng, 1 + seed % 2)
    dual = dual_cone(cone_over(P))
    for _ in range(20):
        s = tuple(rng.randint(-5, 5) for _ in range(P.n + 1))
        assert in_S(P, s) == dual.contains(s)
