"""scikit-learn style wrappers over the functional API.

The estimators follow the ``fit``/``transform`` protocol and inherit
``get_params``/``set_params`` from :class:`~sklearn.base.BaseEstimator`.
Inputs are circle families and lattices rather than numeric matrices, so
they are not meant for sklearn pipelines over feature arrays.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .closure import CircleClosure, enumerate_closed_sets
from .geometry import DEFAULT_SWEEP
from .lattice import build_from_closed_sets, convex_dimension
from .synthesis import MAX_DOUBLINGS, synthesize, verify_representation
from .validation import check_family, check_lattice, check_subsets

__all__ = ["CircleConvexGeometry", "LatticeSynthesizer", "IntervalProjector"]


class CircleConvexGeometry(TransformerMixin, BaseEstimator):
    """Hull closure of a circle family.

    ``fit`` takes the family; ``transform`` maps subsets (indicator rows or
    id lists) to the indicator rows of their closures.
    """

    def __init__(self, method: str = "envelope", sweep: int = DEFAULT_SWEEP, max_size: int = 20):
        self.method = method
        self.sweep = sweep
        self.max_size = max_size

    def fit(self, X, y=None):
        self.family_ = check_family(X)
        self.closure_ = CircleClosure(self.family_, method=self.method, sweep=self.sweep)
        self.closed_sets_ = enumerate_closed_sets(self.closure_, max_size=self.max_size)
        self.lattice_ = build_from_closed_sets(self.closed_sets_)
        self.convex_dimension_ = convex_dimension(self.lattice_)
        self.n_features_in_ = len(self.family_)
        return self

    def transform(self, X):
        check_is_fitted(self, "closure_")
        rows = check_subsets(X, self.family_)
        out = np.zeros_like(rows)
        for k, row in enumerate(rows):
            mask = sum(1 << j for j in np.flatnonzero(row))
            image = self.closure_.closure_mask(int(mask))
            out[k] = [(image >> j) & 1 for j in range(self.n_features_in_)]
        return out


class LatticeSynthesizer(BaseEstimator):
    """Collinear circle family realizing a lattice of convex dimension <= 2.

    ``transform`` returns the ``(x, r)`` rows (as Fractions) of the circles
    assigned to the given join-irreducible labels.
    """

    def __init__(self, max_doublings: int = MAX_DOUBLINGS, verify: bool = True):
        self.max_doublings = max_doublings
        self.verify = verify

    def fit(self, X, y=None):
        L = check_lattice(X)
        self.lattice_ = L
        self.representation_, self.trace_ = synthesize(L, max_doublings=self.max_doublings)
        self.family_ = self.representation_.family
        if self.verify:
            self.report_ = verify_representation(self.representation_, L)
            if not self.report_.ok:
                raise RuntimeError(f"representation failed verification: {self.report_.checks}")
        return self

    def transform(self, X=None):
        check_is_fitted(self, "representation_")
        circles = self.representation_.circles_by_element()
        labels = list(circles) if X is None else list(X)
        return np.array([(circles[lab].x, circles[lab].r) for lab in labels], dtype=object).reshape(-1, 2)

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(None)


class IntervalProjector(TransformerMixin, BaseEstimator):
    """Each collinear circle to the interval between its extreme points."""

    def fit(self, X, y=None):
        self.family_ = check_family(X, kind="collinear")
        return self

    def transform(self, X=None):
        check_is_fitted(self, "family_")
        family = self.family_ if X is None else check_family(X, kind="collinear")
        return np.array([(c.lmpt, c.rmpt) for c in family.circles], dtype=object).reshape(-1, 2)

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(None)
