"""Estimator-style front end: fit on one polyhedron, read the results off attributes."""
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .basespace import base_ideal, reduce_presentation, w_grading
from .ideal import toric_ideal
from .io import PolyhedronDocument
from .monoid import generators_Ttilde
from .polyhedron import RationalPolyhedron
from .tstar import TSpace


class VersalBaseSpace(BaseEstimator):
    """Compute T~, its toric ideal and the reduced base space of one polyhedron.

    ``fit`` accepts a RationalPolyhedron, a PolyhedronDocument or a path to a
    JSON document. There is no sample axis, so there is no predict/transform.
    """

    def __init__(self, u0=None, pivot_priority=None, check_stability=True):
        self.u0 = u0
        self.pivot_priority = pivot_priority
        self.check_stability = check_stability

    def fit(self, X, y=None):
        P = _as_polyhedron(X)
        T = TSpace(P)
        sg = generators_Ttilde(T)
        ok, witness = sg.is_degree1_generated()
        self.polyhedron_ = P
        self.tspace_ = T
        self.dim_T1_ = T.dim_T1
        self.generators_ = sg
        self.degree1_generated_ = ok
        self.witness_ = witness
        gb = toric_ideal(sg)
        gb.semigroup = sg
        self.toric_ideal_ = gb
        if not ok:
            # the ideal is still meaningful; the base space is not
            self.base_ideal_ = self.presentation_ = None
            return self
        self.base_ideal_ = base_ideal(gb, self.u0, check_stability=self.check_stability)
        self.presentation_ = reduce_presentation(self.base_ideal_, self.pivot_priority)
        self.tangent_dim_ = self.presentation_.tangent_dim
        return self

    def w_dimensions(self, max_degree=None):
        if getattr(self, "base_ideal_", None) is None:
            raise NotFittedError("fit on a polyhedron whose T~ is generated in degree 1 first")
        return w_grading(self.base_ideal_, max_degree).dims


def _as_polyhedron(X):
    if isinstance(X, RationalPolyhedron):
        return X
    if isinstance(X, PolyhedronDocument):
        return X.polyhedron()
    return PolyhedronDocument.load(X).polyhedron()
