"""scikit-learn style wrapper around the cubature construction.

``X`` is an integer array of shape ``(n, k)`` holding node residues in
``[0, m)``; row ``(j_1, ..., j_k)`` stands for the point
``(w_{j_1}, ..., w_{j_k})`` of Omega_m^k.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cubature import compute_weights, equal_weight_basis_search, precision_basis_report
from .design import Design, indicator_coefficients, is_regular_fraction
from .interp import MonomialBasis, quotient_basis
from .measures import GaussianMoments, MomentProvider


def check_design(X, m: int) -> Design:
    """Validate a residue array and build a :class:`Design` from it."""
    X = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1)
    if not np.issubdtype(X.dtype, np.integer):
        if not np.all(np.mod(X, 1) == 0):
            raise ValueError("node residues must be integers")
        X = X.astype(int)
    if X.min() < 0 or X.max() >= m:
        raise ValueError(f"node residues must lie in [0, {m})")
    return Design(m, X.shape[1], tuple(map(tuple, X.tolist())))


class InterpolatoryCubature(TransformerMixin, BaseEstimator):
    """Interpolatory cubature rule with nodes in Omega_m^k.

    Parameters
    ----------
    m : int
        Number of roots of unity per coordinate.
    measure : "gaussian" or MomentProvider
        Measure to integrate against.
    basis : "auto", "equal" or sequence of exponent tuples
        ``"auto"`` takes the quotient basis in ``order``; ``"equal"`` runs the
        equal-weight search and raises if no such basis exists.
    order : "deglex" or sequence of exponent tuples
        Scan order for ``"auto"`` and ``"equal"``.

    Attributes
    ----------
    design_, indicator_, basis_, rule_ : fitted objects
    weights_ : ndarray of complex, shape (n_nodes,)
    equal_weights_ : bool
    precision_ : PrecisionReport or None
        Only computed for equal-weight rules.
    regular_ : bool
    """

    def __init__(self, m=2, measure="gaussian", basis="auto", order="deglex"):
        self.m = m
        self.measure = measure
        self.basis = basis
        self.order = order

    def _provider(self, k: int) -> MomentProvider:
        if isinstance(self.measure, MomentProvider):
            return self.measure
        if self.measure == "gaussian":
            return GaussianMoments(k)
        raise ValueError(f"unknown measure {self.measure!r}")

    def fit(self, X, y=None):
        design = check_design(X, self.m)
        provider = self._provider(design.k)
        indicator = indicator_coefficients(design)
        if isinstance(self.basis, str) and self.basis == "auto":
            basis = quotient_basis(design, self.order)
            provenance = "quotient basis"
        elif isinstance(self.basis, str) and self.basis == "equal":
            basis = equal_weight_basis_search(design, provider, self.order, indicator)
            if basis is None:
                raise ValueError("no equal-weight basis exists for this design and measure")
            provenance = "equal-weight search"
        else:
            basis = MonomialBasis(self.basis, self.m)
            provenance = "given"
        rule = compute_weights(design, basis, provider, provenance)

        self.design_ = design
        self.indicator_ = indicator
        self.basis_ = basis
        self.rule_ = rule
        self.weights_ = rule.complex_weights()
        self.equal_weights_ = rule.equal_weights
        self.precision_ = (
            precision_basis_report(rule, provider, indicator) if rule.equal_weights and rule.exact else None
        )
        self.regular_ = is_regular_fraction(design).regular
        self.n_features_in_ = design.k
        return self

    def transform(self, X):
        """Complex evaluation matrix of the fitted basis at the rows of ``X``."""
        check_is_fitted(self, "rule_")
        X = check_array(X, dtype=None)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} columns, expected {self.n_features_in_}")
        exps = np.asarray(self.basis_, dtype=int)
        residues = np.mod(np.asarray(X, dtype=int) @ exps.T, self.m)
        return np.exp(-2j * np.pi * residues / self.m)

    def integrate(self, func):
        """Apply the rule to a callable of the complex node coordinates, or to node values."""
        check_is_fitted(self, "rule_")
        if callable(func):
            values = np.asarray([func(z) for z in self.design_.complex_nodes()], dtype=complex)
        else:
            values = np.asarray(func, dtype=complex)
        return self.rule_.integrate(values)
