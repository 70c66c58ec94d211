"""scikit-learn style wrappers around the reduction loop and the exact solver."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_graph, check_parameters
from .antler_finder import reduce_all, solve_by_antler_complexity


class AntlerReducer(TransformerMixin, BaseEstimator):
    """Learns a reduction trace on ``fit``; ``transform`` replays it.

    After fitting, ``solution_`` holds the vertices forced into some
    optimal solution and ``residual_`` the reduced graph.
    """

    def __init__(self, k=1, z=1, fvc_backend="structured", antler_search="structured",
                 max_trials=2000, seed=0):
        self.k = k
        self.z = z
        self.fvc_backend = fvc_backend
        self.antler_search = antler_search
        self.max_trials = max_trials
        self.seed = seed

    def fit(self, X, y=None):
        check_parameters(self.k, self.z)
        G = check_graph(X)
        self.residual_, self.solution_, self.trace_ = reduce_all(
            G, self.k, self.z, fvc_backend=self.fvc_backend,
            antler_search=self.antler_search, max_trials=self.max_trials, seed=self.seed)
        self.n_steps_ = len(self.trace_)
        return self

    def transform(self, X):
        check_is_fitted(self, "trace_")
        return self.trace_.replay(check_graph(X))

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y).residual_


class AntlerFVSSolver(BaseEstimator):
    """Optimal feedback vertex set for graphs of small antler complexity."""

    def __init__(self, cap=3):
        self.cap = cap

    def fit(self, X, y=None):
        self.solution_ = solve_by_antler_complexity(check_graph(X), cap=self.cap)
        self.n_selected_ = len(self.solution_)
        return self

    def predict(self, X=None):
        check_is_fitted(self, "solution_")
        return self.solution_

    def fit_predict(self, X, y=None):
        return self.fit(X, y).solution_
