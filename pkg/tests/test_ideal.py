import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from torideform.exceptions import OpenPath
from torideform.ideal import (
    BinomialFactory, face_loops, local_ideal, loop_equation, pattern_check, stilde_ideal,
    toric_ideal,
)
from torideform.monoid import generators_Ttilde
from torideform.poly import embed, format_poly
from torideform.polyhedron import build_polyhedron
from torideform.tstar import TSpace
from torideform.verify import check_F_binomials, check_local_loop_generation, random_polyhedron

from conftest import house, segment


def _monomials(weights, degree):
    """Exponent vectors of the given weighted degree."""
    out = []

    def rec(i, left, e):
        if i == len(weights):
            if left == 0:
                out.append(tuple(e))
            return
        for m in range(int(left // weights[i]) + 1):
            rec(i + 1, left - m * weights[i], e + [m])
    rec(0, degree, [])
    return out


def standard_count(gb, weights, degree):
    """Monomials of the given weighted degree outside the initial ideal."""
    leads = [gb.order.lead(p)[0] for p in gb.polys]
    return sum(1 for e in _monomials(weights, degree)
               if not any(all(a <= b for a, b in zip(lead, e)) for lead in leads))


def image_count(sg, degree):
    coords = sg.coordinates
    return len({tuple(sum(m * c[j] for m, c in zip(e, coords)) for j in range(len(coords[0])))
                for e in _monomials(sg.degrees, degree)})


def test_half_half_ideal():
    gb = toric_ideal(generators_Ttilde(TSpace(segment("-1/2", "1/2"))))
    assert gb.strings() == ["u_s1*u_t(1,d) - u_s2*u_t(-1,d)"]


def test_half_third_ideal_needs_three_quadrics():
    gb = toric_ideal(generators_Ttilde(TSpace(segment("-1/2", "1/3"))))
    assert sorted(gb.strings()) == sorted([
        "u_t(-1,d)^2 - u_s1*u_t(-2,d)",
        "u_t(1,d)*u_t(-1,d) - u_s2*u_t(-2,d)",
        "u_s1*u_t(1,d) - u_s2*u_t(-1,d)",
    ])
    # the two printed binomials lie in the ideal but span only a 2-dimensional piece of I_2
    ring = gb.ring
    u = {n: ring.var(n) for n in ring.names}
    printed = [u["u_t(1,d)"] * u["u_s1"] - u["u_t(-1,d)"] * u["u_s2"],
               u["u_t(-1,d)"] ** 2 - u["u_t(-2,d)"] * u["u_s1"]]
    assert all(gb.contains(p) for p in printed)
    assert standard_count(gb, [1] * 5, 2) == 15 - 3


@pytest.mark.parametrize("P", [segment("-1/2", "1/2"), segment("-1/2", "1/3"), segment("-2/3", "1/4"),
                               segment("-3/5", "1/5"), house()],
                         ids=["half-half", "half-third", "two-thirds-quarter", "three-fifths", "house"])
def test_ideal_hilbert_function_matches_semigroup(P):
    sg = generators_Ttilde(TSpace(P))
    gb = toric_ideal(sg)
    for d in range(1, 5):
        assert standard_count(gb, sg.degrees, d) == image_count(sg, d)
    for p in gb.polys:
        ims = {tuple(sum(e[i] * sg.coordinates[i][j] for i in range(len(sg)))
                     for j in range(len(sg.coordinates[0]))) for e in p.terms}
        assert len(ims) == 1


def test_free_monoid_has_empty_ideal():
    sg = generators_Ttilde(TSpace(build_polyhedron([(F(1, 3),)])))
    assert toric_ideal(sg).polys == []


@pytest.fixture(scope="module")
def factory():
    return BinomialFactory(TSpace(segment("-1/2", "1/2")))


def _k(factory, **counts):
    k = [0] * factory.r
    for c, m in counts.items():
        k[factory.data.tails.index((int(c.replace("m", "-")[1:]),))] = m
    return k


def test_f_and_F_examples(factory):
    k = _k(factory, c1=1, cm1=1)
    x1 = f"x{factory.data.tails.index((1,)) + 1}"
    xm1 = f"x{factory.data.tails.index((-1,)) + 1}"
    assert format_poly(factory.f(k)) in (f"{xm1}*{x1} - t^2", f"{x1}*{xm1} - t^2", f"-t^2 + {xm1}*{x1}",
                                         f"-t^2 + {x1}*{xm1}")
    F_ = factory.F(k)
    assert factory.specialize_to_t(F_) == factory.f(k)
    lt = [e for e in F_.terms if sum(e[len(factory.u_names):]) == 0][0]
    names = {factory.u_names[i] for i, m in enumerate(lt[:len(factory.u_names)]) if m}
    assert names in ({"u_s1", "u_t(1,d)"}, {"u_s2", "u_t(-1,d)"})
    k2 = _k(factory, c2=1, cm2=1)
    assert factory.f(k2) == factory.t_ring.monomial([0] + k2) - factory.t_ring.var("t") ** 2
    single = _k(factory, c1=1)
    assert factory.f(single).is_zero and factory.F(single).is_zero


def test_F_lies_in_Stilde_ideal(factory):
    gb = stilde_ideal(factory.data)
    rng = random.Random(3)
    for _ in range(15):
        k = [rng.randint(0, 2) for _ in range(factory.r)]
        assert gb.contains(embed(factory.F(k), gb.ring))
        assert factory.specialize_to_t(factory.F(k)) == factory.f(k)


def test_syzygies(factory):
    ideal = factory.embedded_ttilde_ideal(toric_ideal(factory.ttilde))
    k = _k(factory, c1=1, cm1=1)
    a = _k(factory, c1=1)
    assert factory.R(a, k).image(factory.f).is_zero
    assert factory.R([0] * factory.r, k).image(factory.f).is_zero
    assert ideal.contains(factory.R_tilde(a, k, ideal).image(factory.F))
    third = BinomialFactory(TSpace(segment("-1/2", "1/3")))
    ideal3 = third.embedded_ttilde_ideal(toric_ideal(third.ttilde))
    rng = random.Random(7)
    for _ in range(10):
        k = [rng.randint(0, 2) for _ in range(third.r)]
        a = [rng.randint(0, 1) for _ in range(third.r)]
        assert third.R(a, k).image(third.f).is_zero
        assert ideal3.contains(third.R_tilde(a, k, ideal3).image(third.F))


def test_house_loop_equation():
    H = house()
    T = TSpace(H)
    sg = generators_Ttilde(T)
    gb = toric_ideal(sg)
    (mu,) = face_loops(H)
    for c in [(1, 0), (0, 1), (1, 1), (2, -1)]:
        p = loop_equation(T, mu, c, sg)
        assert gb.contains(p)
        twice = loop_equation(T, tuple(2 * m for m in mu), c, sg)
        assert gb.contains(twice)
    # c = (1,0): both sides represent 2t1 = t3 + t4, so the binomial is trivial
    assert loop_equation(T, mu, (1, 0), sg).is_zero
    p = loop_equation(T, mu, (0, 1), sg)
    assert len(p.terms) == 2 and gb.same_ideal(type(gb)(gb.ring, [p]))
    assert loop_equation(T, (0,) * 5, (1, 0), sg).is_zero
    with pytest.raises(OpenPath):
        loop_equation(T, (1, 0, 0, 0, 0), (1, 0), sg)


def test_local_ideals():
    for P, expected in [
        (segment("-1/2", "1/2"), ["u_s1*u_t(1,d) - u_s2*u_t(-1,d)"]),
        (segment("-1/2", "1/3"), None),
    ]:
        T = TSpace(P)
        gb = local_ideal(T, P.edges[0])
        assert gb.same_ideal(toric_ideal(generators_Ttilde(T)))
        if expected:
            assert gb.strings() == expected
    short = build_polyhedron([(F(1, 2), 1), (F(3, 4), F(5, 4))])
    assert local_ideal(TSpace(short), short.edges[0]).polys == []


def test_local_pattern_conventions():
    P = segment("-1/2", "1/2")
    T = TSpace(P)
    assert pattern_check(T, P.edges[0]) == {True: (True, True), False: (False, False)}
    P3 = segment("-1/2", "1/3")
    assert pattern_check(TSpace(P3), P3.edges[0])[True] == (True, False)


def test_normal_forms():
    gb = toric_ideal(generators_Ttilde(TSpace(segment("-1/2", "1/2"))))
    for p in gb.polys:
        assert gb.normal_form(p).is_zero
    uA = gb.ring.var("u_t(1,d)")
    assert gb.normal_form(uA * uA) == uA * uA


@given(st.integers(0, 10 ** 6))
@settings(max_examples=10, deadline=None)
def test_F_binomials_random_segments(seed):
    P = random_polyhedron(random.Random(seed), 1)
    assert check_F_binomials(P, random.Random(seed), 6) == []


@pytest.mark.parametrize("P", [segment("-1/2", "1/2"), segment("-1/2", "1/3"), house()],
                         ids=["half-half", "half-third", "house"])
def test_local_and_loop_equations_generate(P):
    assert check_local_loop_generation(P, random.Random(0), 4) == []
