import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from torideform.io import PolyhedronDocument
from torideform.polyhedron import build_polyhedron
from torideform.tstar import TSpace

CORPUS = Path(__file__).resolve().parent.parent / "data" / "corpus"


def segment(a, b):
    return build_polyhedron([(F(a),), (F(b),)])


def house():
    return build_polyhedron([(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)])


def height_half():
    return build_polyhedron([(F(-1, 6), F(1, 2)), (F(2, 3), F(1, 2))])


def element(T, t=0, **s):
    """t*t + sum s_i: keyword names s1, s2, ... for vertex coordinates; t may be a dict per edge."""
    x = T.zero()
    if isinstance(t, dict):
        for nu, k in t.items():
            x = x + T.t(nu, F(k))
    elif t:
        x = x + T.t(0, F(t))
    for name, k in s.items():
        x = x + T.s(int(name[1:]) - 1, F(k))
    return x


def corpus_documents():
    return sorted(CORPUS.glob("*.json"))


def load(name):
    return PolyhedronDocument.load(CORPUS / f"{name}.json")


@pytest.fixture
def half_half():
    P = segment("-1/2", "1/2")
    return P, TSpace(P)


@pytest.fixture
def half_third():
    P = segment("-1/2", "1/3")
    return P, TSpace(P)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
