"""Acceptance criteria 1-8, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are also repeated in
the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import corpus_documents, element, house, segment  # noqa: E402
from torideform.basespace import base_ideal, reduce_presentation, tangent_report  # noqa: E402
from torideform.dualcone import hilbert_basis  # noqa: E402
from torideform.ideal import toric_ideal  # noqa: E402
from torideform.io import PolyhedronDocument  # noqa: E402
from torideform.monoid import generators_Ttilde, submonoid_Td  # noqa: E402
from torideform.polyhedron import build_polyhedron  # noqa: E402
from torideform.poly import GroebnerBasis  # noqa: E402
from torideform.tstar import TSpace  # noqa: E402
from torideform.verify import check_local_loop_generation, random_suite  # noqa: E402

SEED = 20240611
SUITE_CASES = 200
RESULTS = []
CRITERIA = {}


def criterion(number, title):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return register


def _ideal_of(P):
    sg = generators_Ttilde(TSpace(P))
    gb = toric_ideal(sg)
    gb.semigroup = sg
    return gb


@criterion(1, "Hilbert bases of two segments")
def hilbert_bases():
    return [
        ("[-1/2,1/2]", hilbert_basis(segment("-1/2", "1/2")).elements
         == [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)]),
        ("[-1/2,1/3]", hilbert_basis(segment("-1/2", "1/3")).elements
         == [(-3, 1), (-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)]),
    ]


@criterion(2, "minimal generators of T~")
def minimal_generators():
    T = TSpace(segment("-1/2", "1/2"))
    first = set(generators_Ttilde(T).elements) == {
        element(T, s1=1), element(T, s2=1),
        element(T, t=1, s2="1/2", s1="-1/2"), element(T, t=1, s2="-1/2", s1="1/2")}
    H = TSpace(build_polyhedron([(F(-1, 6), F(1, 2)), (F(2, 3), F(1, 2))]))
    second = set(generators_Ttilde(H).elements) == {
        element(H, s1=1), element(H, t="5/6", s1="1/6"), element(H, t="5/3", s1="-2/3")}
    T3 = TSpace(segment("-1/2", "1/3"))
    # B2 compared by value: 5/3t - 2/3s_w
    third = set(generators_Ttilde(T3).elements) == {
        element(T3, s1=1), element(T3, s2=1), element(T3, t="5/6", s2="2/3", s1="-1/2"),
        element(T3, t="5/6", s1="1/2", s2="-1/3"), element(T3, t="5/3", s2="-2/3")}
    return [("[-1/2,1/2]", first), ("height-1/2 segment", second), ("[-1/2,1/3]", third)]


@criterion(3, "toric ideals")
def toric_ideals():
    gb = _ideal_of(segment("-1/2", "1/2"))
    first = gb.strings() == ["u_s1*u_t(1,d) - u_s2*u_t(-1,d)"]
    gb3 = _ideal_of(segment("-1/2", "1/3"))
    # paper names: u_A = u_t(1,d), u_v = u_s1, u_w = u_s2, u_B1 = u_t(-1,d), u_B2 = u_t(-2,d)
    ring = gb3.ring
    u = {n: ring.var(n) for n in ring.names}
    printed = [u["u_t(1,d)"] * u["u_s1"] - u["u_t(-1,d)"] * u["u_s2"],
               u["u_t(-1,d)"] ** 2 - u["u_t(-2,d)"] * u["u_s1"]]
    second = GroebnerBasis(ring, printed, gb3.order).same_ideal(gb3)
    return [("[-1/2,1/2]", first),
            (f"[-1/2,1/3] ({len(gb3.polys)} quadrics needed: {'; '.join(gb3.strings())})", second)]


@criterion(4, "reduced base spaces")
def base_spaces():
    pres = reduce_presentation(base_ideal(_ideal_of(segment("-1/2", "1/2")), "s1"), ["T_t(1,d)"]).strings()
    first = pres["free"] == ["T_s2", "T_t(-1,d)"] and pres["relations"] == ["T_s2*T_t(-1,d)"]
    pres3 = reduce_presentation(base_ideal(_ideal_of(segment("-1/2", "1/3")), "t(-1,d)"),
                                ["T_s2", "T_t(-2,d)"]).strings()
    second = (pres3["free"] == ["T_s1", "T_t(1,d)"]
              and sorted(pres3["relations"]) == ["T_s1*T_t(1,d)", "T_s1^2"])
    return [("[-1/2,1/2] union of two lines", first), ("[-1/2,1/3] line with embedded point", second)]


@criterion(5, "degree-1 generation checks")
def degree_one_checks():
    H = house()
    T = TSpace(H)
    house_ok = generators_Ttilde(T).is_degree1_generated() == (True, None)
    ok_d, witness_d = submonoid_Td(T, H.edges[0]).is_degree1_generated()
    house_local = not ok_d and witness_d.element == T.t(0, 2)
    T35 = TSpace(segment("-3/5", "1/5"))
    ok, witness = generators_Ttilde(T35).is_degree1_generated()
    three_fifths = (not ok and witness.label == "t(3,d)"
                    and witness.element == element(T35, t="12/5", s2="2/5", s1="-4/5"))
    T23 = TSpace(segment("-2/3", "1/4"))
    local = submonoid_Td(T23, T23.P.edges[0])
    ok23, witness23 = local.is_degree1_generated()
    extra = "" if ok23 else f" (extra generator {witness23.element} of degree {witness23.degree})"
    return [("house T~", house_ok), ("house T~_d1 witness 2t1", house_local),
            ("[-3/5,1/5] witness t(3,d)", three_fifths),
            (f"[-2/3,1/4] T~_d degree 1{extra}", ok23 and len(local.generators) == 4)]


@criterion(6, "shortness table")
def shortness_table():
    parts = []
    for m in range(1, 7):
        for n in range(1, 7):
            e = segment(F(-1, m), F(1, n)).edges[0]
            if e.short_left or e.short_right:
                parts.append((f"[-1/{m},1/{n}] not short", False))
    parts.append(("[-1/m,1/n] never short, m,n <= 6", not parts))
    e = build_polyhedron([(F(-1, 6), F(1, 2)), (F(2, 3), F(1, 2))]).edges[0]
    parts.append(("height-1/2 g_d=2, not short", e.g_d == 2 and not e.short_left and not e.short_right))
    e = build_polyhedron([(F(1, 2), 1), (F(3, 4), F(5, 4))]).edges[0]
    parts.append(("[(1/2,1),(3/4,5/4)] g_d=2, both short", e.g_d == 2 and e.short_left and e.short_right))
    return parts


@criterion(7, "tangent cross-check on the corpus")
def tangent_cross_check():
    parts = []
    for path in corpus_documents():
        P = PolyhedronDocument.load(path).polyhedron()
        if not P.is_full_dimensional:
            continue
        sg = generators_Ttilde(TSpace(P))
        if not sg.is_degree1_generated()[0]:
            continue
        rep = tangent_report(P)
        parts.append((path.stem, rep.ok and rep.tangent_dim == rep.dim_T1
                      and rep.krull_dim == rep.dim_T1 + 1))
    return parts


SUITES = [
    ("free pair (T,S)", "free_pair_S"),
    ("free pair (T~,S~)", "free_pair_Stilde"),
    ("projection identity", "projection_identity"),
    ("lambda~ lifts lambda", "lambda_tilde"),
    ("t(c,d) minimum per orientation = side index", "shortness_degree"),
    ("t(c,d) minimum over both orientations = shortness index", "shortness_degree_edge"),
    ("F_k in I_S~ and specialises to f_k", "F_binomials"),
    ("base ideal stable under monomial multiples", "base_ideal_stability"),
]


@criterion(8, "randomized property suites")
def property_suites():
    parts = []
    for title, name in SUITES:
        res = random_suite(name, seed=SEED, cases=SUITE_CASES, depth=6)
        detail = f"{title}: {res.cases} cases, {len(res.failures)} counterexamples"
        if res.failures:
            detail += f", first {res.failures[0]}"
        parts.append((detail, res.passed and res.cases >= SUITE_CASES))
    for path in corpus_documents():
        P = PolyhedronDocument.load(path).polyhedron()
        fails = check_local_loop_generation(P)
        parts.append((f"local + loop equations generate on {path.stem}", not fails))
    return parts


def run_criterion(number):
    title, fn = CRITERIA[number]
    parts = fn()
    ok = all(p for _, p in parts)
    failed = [name for name, p in parts if not p]
    line = f"CRITERION {number} {'PASS' if ok else 'FAIL'} {title}"
    if failed:
        line += " | failing: " + " / ".join(failed)
    RESULTS.append(line)
    print(line)
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, line = run_criterion(number)
    assert ok, line


if __name__ == "__main__":
    outcomes = [run_criterion(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(outcomes) else 1)
