"""scikit-learn wrappers: a c-planarity classifier and the gadget transformer.

Samples are ``CGraph`` objects, so ``X`` is any sequence of them rather
than a numeric array.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .cgraph import CGraph
from .decision import Decision
from .gadgets import make_three_connected
from .oracle import DEFAULT_CAP, brute_force_cplanar
from .solver import DEFAULT_THRESHOLD, SolverOptions, test_cplanarity


def check_instances(X) -> list[CGraph]:
    if isinstance(X, CGraph):
        raise TypeError("expected a sequence of CGraph instances, got a single CGraph")
    items = list(X)
    for i, cg in enumerate(items):
        if not isinstance(cg, CGraph):
            raise TypeError(f"sample {i} is {type(cg).__name__}, not CGraph")
    return items


class CPlanarityTester(BaseEstimator, ClassifierMixin):
    """Label each instance c-planar (True) or not (False).

    Nothing is learned; ``fit`` only validates its input. ``method`` picks
    the divide-and-conquer solver or the exhaustive oracle.
    """

    def __init__(self, method: str = "solver", threshold: int = DEFAULT_THRESHOLD, nested: int | None = None,
                 gadgets: str = "auto", cap: int = DEFAULT_CAP):
        self.method = method
        self.threshold = threshold
        self.nested = nested
        self.gadgets = gadgets
        self.cap = cap

    def fit(self, X, y=None):
        check_instances(X)
        if self.method not in ("solver", "oracle"):
            raise ValueError(f"method must be 'solver' or 'oracle', got {self.method!r}")
        self.classes_ = np.array([False, True])
        return self

    def decide(self, X) -> list[Decision]:
        check_is_fitted(self, "classes_")
        items = check_instances(X)
        if self.method == "oracle":
            return [brute_force_cplanar(cg, cap=self.cap) for cg in items]
        opts = SolverOptions(threshold=self.threshold, nested=self.nested, gadgets=self.gadgets)
        return [test_cplanarity(cg, opts) for cg in items]

    def predict(self, X) -> np.ndarray:
        return np.array([d.answer for d in self.decide(X)], dtype=bool)


class ThreeConnectedTransformer(BaseEstimator, TransformerMixin):
    """Replace each instance by its 3-connected gadget expansion.

    ``provenance_`` keeps, per sample of the last ``transform``, the map
    from new vertices back to the input.
    """

    def fit(self, X, y=None):
        check_instances(X)
        return self

    def transform(self, X) -> list[CGraph]:
        out, self.provenance_ = [], []
        for cg in check_instances(X):
            t, prov = make_three_connected(cg)
            out.append(t)
            self.provenance_.append(prov)
        return out


def predict_many(instances: Sequence[CGraph], **params) -> np.ndarray:
    return CPlanarityTester(**params).fit(instances).predict(instances)
