"""Estimator-style wrappers exposing the miners to scikit-learn pipelines.

The core algorithms work on named contexts; these classes accept plain
matrices, synthesize positional names, and follow the usual fit/transform
conventions (parameters stored verbatim at construction, validation and
learned state in ``fit``, learned attributes suffixed with ``_``).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .context import FormalContext, ManyValuedContext
from .galois import closure_intent
from .graded import graded_lattice
from .lattice import build_lattice

__all__ = [
    "check_membership_matrix",
    "check_boolean_matrix",
    "MembershipBinarizer",
    "ConceptLatticeMiner",
    "GradedLatticeMiner",
]


def check_membership_matrix(X) -> np.ndarray:
    """Validate a 2-D float matrix of memberships in [0, 1].

    Parameters
    ----------
    X : array-like of shape (n_objects, n_attributes)

    Returns
    -------
    ndarray of float64, C-contiguous copy of the input.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got {X.ndim} dimension(s)")
    if not np.all(np.isfinite(X)):
        raise ValueError("memberships must be finite")
    if X.size and (X.min() < 0.0 or X.max() > 1.0):
        raise ValueError("memberships must lie in [0, 1]")
    return np.array(X, dtype=np.float64)


def check_boolean_matrix(X) -> np.ndarray:
    """Validate a 2-D incidence matrix of booleans or exact 0/1 values."""
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got {X.ndim} dimension(s)")
    if X.dtype != bool:
        as_float = np.asarray(X, dtype=np.float64)
        if not np.all((as_float == 0.0) | (as_float == 1.0)):
            raise ValueError("incidence cells must be boolean or exactly 0/1")
        X = as_float != 0.0
    return np.array(X, dtype=bool)


def _auto_context(X: np.ndarray) -> FormalContext:
    n, m = X.shape
    return FormalContext(
        tuple(f"o{i}" for i in range(n)),
        tuple(f"a{j}" for j in range(m)),
        tuple(tuple(bool(v) for v in row) for row in X),
    )


def _check_theta(theta) -> float:
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta {theta!r} outside [0, 1]")
    return theta


class MembershipBinarizer(BaseEstimator, TransformerMixin):
    """Binarize membership matrices at a threshold.

    Parameters
    ----------
    theta : float, default=0.5
        Cells at least ``theta`` become True.

    Attributes
    ----------
    n_features_in_ : int
        Column count seen at fit time.
    """

    def __init__(self, theta: float = 0.5):
        self.theta = theta

    def fit(self, X, y=None):
        _check_theta(self.theta)
        X = check_membership_matrix(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "n_features_in_"):
            raise NotFittedError("MembershipBinarizer is not fitted")
        X = check_membership_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"expected {self.n_features_in_} columns, got {X.shape[1]}"
            )
        return X >= self.theta


class ConceptLatticeMiner(BaseEstimator, TransformerMixin):
    """Mine the concept lattice of a boolean incidence matrix.

    Attributes
    ----------
    context_ : FormalContext
        The fitted incidence with positional names.
    concepts_ : tuple of Concept
        All concepts in lectic intent order.
    lattice_ : ConceptLattice
        Concepts plus the cover relation.
    n_features_in_ : int
        Column count seen at fit time.

    ``transform`` maps each row to the indicator of the closure of its
    attribute set under the fitted context.
    """

    def fit(self, X, y=None):
        X = check_boolean_matrix(X)
        self.n_features_in_ = X.shape[1]
        self.context_ = _auto_context(X)
        self.lattice_ = build_lattice(self.context_)
        self.concepts_ = self.lattice_.concepts
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "context_"):
            raise NotFittedError("ConceptLatticeMiner is not fitted")
        X = check_boolean_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"expected {self.n_features_in_} columns, got {X.shape[1]}"
            )
        out = np.zeros_like(X, dtype=bool)
        for i, row in enumerate(X):
            closed = closure_intent(self.context_, np.flatnonzero(row))
            for j in closed:
                out[i, j] = True
        return out


class GradedLatticeMiner(BaseEstimator):
    """Mine the graded lattice of a membership matrix.

    Parameters
    ----------
    theta : float, default=0.5
        Binarization threshold for the underlying concepts.

    Attributes
    ----------
    lattice_ : GradedLattice
        Graded concepts, skipped concepts, and the intent-ball chain.
    chain_radii_ : tuple of float
        Distinct intent grades, increasing.
    n_features_in_ : int
        Column count seen at fit time.
    """

    def __init__(self, theta: float = 0.5):
        self.theta = theta

    def fit(self, X, y=None):
        theta = _check_theta(self.theta)
        X = check_membership_matrix(X)
        self.n_features_in_ = X.shape[1]
        n, m = X.shape
        mv = ManyValuedContext(
            tuple(f"o{i}" for i in range(n)),
            tuple(f"a{j}" for j in range(m)),
            tuple(tuple(float(v) for v in row) for row in X),
        )
        self.lattice_ = graded_lattice(mv, theta)
        self.chain_radii_ = tuple(b.radius for b in self.lattice_.chain)
        return self
