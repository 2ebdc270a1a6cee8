from sklearn.base import clone

from torideform.estimator import VersalBaseSpace

from conftest import CORPUS, load, segment


def test_fit_on_polyhedron_document_and_path():
    est = VersalBaseSpace(u0="t(-1,d)", pivot_priority=["T_s2", "T_t(-2,d)"])
    for X in (segment("-1/2", "1/3"), load("segment_half_third"), CORPUS / "segment_half_third.json"):
        est.fit(X)
        assert est.presentation_.strings()["free"] == ["T_s1", "T_t(1,d)"]
        assert est.tangent_dim_ == est.dim_T1_ == 2
    assert est.w_dimensions(3) == {2: 2, 3: 0}


def test_clone_and_params():
    est = VersalBaseSpace(u0="s1")
    other = clone(est).set_params(u0="s2")
    assert est.get_params()["u0"] == "s1" and other.u0 == "s2"


def test_hypothesis_failure_keeps_ideal():
    est = VersalBaseSpace().fit(load("segment_three_fifths_fifth"))
    assert not est.degree1_generated_ and est.witness_.label == "t(3,d)"
    assert est.presentation_ is None and len(est.toric_ideal_.polys) > 0
