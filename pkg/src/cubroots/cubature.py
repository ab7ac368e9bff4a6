"""Interpolatory cubature rules with nodes in Omega_m^k.

The weights of the rule interpolatory on ``Span(S)`` solve
``X_{D,S}^t w = [int s d(lambda)]_{s in S}``.  Equal weights ``1/n`` occur
exactly when every basis monomial lies in the set

    A = {alpha : int z^alpha d(lambda) = (m^k / n) b_{alpha-bar}},

and then A is also the precision basis of the rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .cyclo import CycNum, root_power
from .design import (
    Design,
    IndicatorFn,
    Monomial,
    conjugate_class,
    evaluation_residue,
    indicator_coefficients,
    node_sum,
    reduce_exponent,
    reduced_exponents,
    support,
)
from .exceptions import IncorrectPairError, InvariantError, PreconditionError
from .interp import MonomialBasis, evaluation_matrix, exact_rank, residue_rank, residue_span, solve, term_order
from .measures import GaussianMoments, MomentProvider

__all__ = [
    "CubatureRule",
    "PrecisionReport",
    "compute_weights",
    "equal_weight_basis_search",
    "in_A",
    "mixed_exactness_check",
    "polynomial_basis_weights",
    "precision_basis_report",
    "rule_sum",
    "verify_exactness",
]


@dataclass(frozen=True)
class CubatureRule:
    """Nodes, interpolation basis and weights (in node order)."""

    design: Design
    basis: MonomialBasis
    weights: tuple
    equal_weights: bool
    provenance: str = "given"
    exact: bool = True
    residual: float | None = None

    @property
    def n(self) -> int:
        return self.design.n

    def complex_weights(self) -> np.ndarray:
        return np.array([complex(w) for w in self.weights])

    def integrate(self, values: Sequence) -> complex:
        """Apply the rule to function values given in node order."""
        values = np.asarray(values, dtype=complex)
        if values.shape != (self.n,):
            raise ValueError(f"expected {self.n} values, got shape {values.shape}")
        return complex(self.complex_weights() @ values)


def _exact_moments(provider: MomentProvider, basis, m: int) -> list[CycNum]:
    return [CycNum.coerce(provider.moment(s), m) for s in basis]


def _check_pair(design: Design, basis) -> None:
    n = design.n
    if len(basis) != n:
        raise IncorrectPairError(
            f"basis has {len(basis)} monomials but the design has {n} nodes", n, len(basis)
        )
    rank = residue_rank(design, basis)
    if rank < n:
        raise IncorrectPairError(
            f"evaluation matrix is singular: rank {rank} < {n} (rank defect {n - rank})",
            n,
            len(basis),
            rank,
        )


def compute_weights(
    design: Design,
    basis: Sequence[Sequence[int]],
    provider: MomentProvider,
    provenance: str = "given",
) -> CubatureRule:
    """Weights of the interpolatory rule on ``Span(basis)``.

    Exact providers give exact weights, re-verified by substitution.  Inexact
    providers fall back to a floating-point solve and report the residual.
    """
    m, n = design.m, design.n
    basis = basis if isinstance(basis, MonomialBasis) and basis.m == m else MonomialBasis(basis, m)
    _check_pair(design, basis)
    matrix = evaluation_matrix(design, basis)
    transposed = [list(col) for col in zip(*matrix)]

    if not provider.is_exact:
        xt = np.array([[complex(x) for x in row] for row in transposed])
        mu = np.array([complex(provider.moment(s)) for s in basis])
        w = np.linalg.solve(xt, mu)
        residual = float(np.linalg.norm(xt @ w - mu))
        equal = bool(np.allclose(w, 1 / n, rtol=0, atol=provider.tol))
        return CubatureRule(design, basis, tuple(complex(x) for x in w), equal, provenance, False, residual)

    mu = _exact_moments(provider, basis, m)
    w = solve(transposed, mu)
    for row, target in zip(transposed, mu):
        acc = CycNum.from_int(m, 0)
        for x, y in zip(row, w):
            acc = acc + x * y
        if acc != target:
            raise InvariantError("weights do not reproduce the basis moments")
    equal = all(x == Fraction(1, n) for x in w)
    return CubatureRule(design, basis, tuple(w), equal, provenance, True, 0.0)


def polynomial_basis_weights(
    design: Design,
    polynomials: Sequence[Mapping[tuple, object]],
    provider: MomentProvider,
) -> list[CycNum]:
    """Weights for an interpolation space given by a basis of polynomials.

    Each polynomial maps exponent tuples to rational or cyclotomic
    coefficients.  Moments are obtained by linearity.
    """
    m, n = design.m, design.n
    if len(polynomials) != n:
        raise IncorrectPairError(
            f"{len(polynomials)} polynomials for {n} nodes", n, len(polynomials)
        )
    zero = CycNum.from_int(m, 0)
    cols, mu = [], []
    for poly in polynomials:
        col = []
        for d in design.nodes:
            acc = zero
            for alpha, c in poly.items():
                acc = acc + CycNum.coerce(c, m) * root_power(m, evaluation_residue(alpha, d, m))
            col.append(acc)
        cols.append(col)
        acc = zero
        for alpha, c in poly.items():
            acc = acc + CycNum.coerce(c, m) * CycNum.coerce(provider.moment(alpha), m)
        mu.append(acc)
    if exact_rank(cols) < n:
        raise IncorrectPairError("polynomial evaluation matrix is singular", n, n)
    return solve(cols, mu)


def rule_sum(rule: CubatureRule, alpha: Sequence[int]):
    """``sum_d w_d z^alpha(d)``; exact for exact rules, complex otherwise."""
    m = rule.design.m
    if not rule.exact:
        z = np.array([complex(root_power(m, evaluation_residue(alpha, d, m))) for d in rule.design.nodes])
        return complex(rule.complex_weights() @ z)
    acc = CycNum.from_int(m, 0)
    for w, d in zip(rule.weights, rule.design.nodes):
        acc = acc + w * root_power(m, evaluation_residue(alpha, d, m))
    return acc


def _same(lhs, rhs, provider: MomentProvider, m: int, exact: bool = True, tol: float | None = None) -> bool:
    if provider.is_exact and exact:
        return CycNum.coerce(lhs, m) == CycNum.coerce(rhs, m)
    tol = tol or provider.tol or 1e-10
    return abs(complex(lhs) - complex(rhs)) <= tol


def verify_exactness(
    rule: CubatureRule,
    provider: MomentProvider,
    alpha: Sequence[int],
    tol: float | None = None,
) -> bool:
    """Whether the rule integrates ``z^alpha`` without error.

    The comparison is exact when both rule and provider are; otherwise it
    uses ``tol``, falling back to the provider's tolerance.
    """
    alpha = tuple(alpha)
    if len(alpha) != rule.design.k:
        raise ValueError(f"monomial {alpha} does not have k={rule.design.k} exponents")
    return _same(rule_sum(rule, alpha), provider.moment(alpha), provider, rule.design.m, rule.exact, tol)


def in_A(
    alpha: Sequence[int],
    design: Design,
    provider: MomentProvider,
    indicator: IndicatorFn | None = None,
) -> bool:
    """Test ``int z^alpha d(lambda) == (m^k / n) * b_{alpha-bar}``.

    ``alpha`` may be any non-negative exponent; only its moment depends on
    more than the residue class.
    """
    m, k = design.m, design.k
    f = indicator if indicator is not None else indicator_coefficients(design)
    b = f[conjugate_class(reduce_exponent(alpha, m), m)]
    rhs = b * Fraction(m**k, design.n)
    return _same(provider.moment(tuple(alpha)), rhs, provider, m)


def equal_weight_basis_search(
    design: Design,
    provider: MomentProvider,
    order="deglex",
    indicator: IndicatorFn | None = None,
) -> MonomialBasis | None:
    """Greedy search for a basis giving the equal weights ``1/n``.

    Candidates are the reduced monomials of A, scanned in term order; one is
    kept iff it raises the rank of the evaluation columns kept so far.
    Returns ``None`` when A is exhausted before n columns are found.  The
    basis returned depends on the order, the success/failure verdict does not.
    """
    f = indicator if indicator is not None else indicator_coefficients(design)
    m = design.m
    tracker = residue_span(design.n, m)
    chosen: list[Monomial] = []
    for alpha in term_order(m, design.k, order):
        if not in_A(alpha, design, provider, f):
            continue
        if tracker.add([evaluation_residue(alpha, d, m) for d in design.nodes]):
            chosen.append(alpha)
            if len(chosen) == design.n:
                break
    if len(chosen) < design.n:
        return None
    basis = MonomialBasis(chosen, m)
    rule = compute_weights(design, basis, provider, provenance="equal-weight search")
    if not rule.equal_weights:
        raise InvariantError(f"basis {list(basis)} drawn from A does not give equal weights")
    return basis


@dataclass(frozen=True)
class PrecisionReport:
    """Precision basis of an equal-weight rule, by residue class.

    ``unbounded[c]`` is true when every exponent reducing to ``c`` is
    integrated exactly, so the precision degree over all exponents is
    infinite as soon as any class is unbounded.
    """

    member_classes: tuple[Monomial, ...]
    unbounded: dict = field(default_factory=dict)
    precision_degree: int = 0

    @property
    def unbounded_degree(self) -> bool:
        return any(self.unbounded.values())

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self.member_classes


def precision_basis_report(
    rule: CubatureRule,
    provider: MomentProvider,
    indicator: IndicatorFn | None = None,
) -> PrecisionReport:
    """Residue classes on which the equal-weight rule is exact."""
    if not rule.equal_weights:
        raise PreconditionError(
            "the precision basis is only characterised for equal weights; "
            "use verify_exactness per monomial instead"
        )
    design = rule.design
    m = design.m
    f = indicator if indicator is not None else indicator_coefficients(design)
    members = tuple(a for a in reduced_exponents(m, design.k) if in_A(a, design, provider, f))
    if isinstance(provider, GaussianMoments):
        zero = (0,) * design.k
        closed = {zero} | (set(reduced_exponents(m, design.k)) - support(f))
        if closed != set(members):
            raise InvariantError("Gaussian precision classes disagree with the indicator support")
    unbounded = {a: bool(provider.lift_invariant(a, m)) for a in members}
    degree = max((sum(a) for a in members), default=0)
    return PrecisionReport(members, unbounded, degree)


def mixed_exactness_check(
    rule: CubatureRule,
    alpha: Sequence[int],
    gamma: Sequence[int],
    provider: MomentProvider,
    assume_moment_identity: bool = False,
) -> bool:
    """Exactness of the equal-weight rule on ``z^(alpha+gamma) conj(z)^gamma``.

    Requires ``int z^(alpha+gamma) conj(z)^gamma = int z^alpha``.  Providers
    that cannot evaluate the mixed moment need ``assume_moment_identity``.
    The answer must coincide with exactness on ``z^alpha``, and exactness on
    ``conj(z)^alpha`` must coincide as well; a mismatch raises
    :class:`InvariantError`.
    """
    if not rule.equal_weights:
        raise PreconditionError("mixed exactness is only established for equal weights")
    if not (rule.exact and provider.is_exact):
        raise PreconditionError("mixed exactness check needs an exact rule and exact moments")
    alpha, gamma = tuple(alpha), tuple(gamma)
    design = rule.design
    m, n = design.m, design.n
    if len(alpha) != design.k or len(gamma) != design.k:
        raise ValueError("alpha and gamma must have k exponents")
    holo = tuple(a + g for a, g in zip(alpha, gamma))
    target = CycNum.coerce(provider.moment(alpha), m)

    mixed = provider.mixed_moment(holo, gamma)
    if mixed is None:
        if not assume_moment_identity:
            raise PreconditionError(
                f"cannot establish int z^{holo} conj(z)^{gamma} = int z^{alpha} for this measure"
            )
    elif CycNum.coerce(mixed, m) != target:
        raise PreconditionError(
            f"int z^{holo} conj(z)^{gamma} differs from int z^{alpha}; the identity does not apply"
        )

    # sum_d z^(alpha+gamma)(d) * conj(z^gamma(d)), with conj(w^r) = w^(-r)
    counts = [0] * m
    for d in design.nodes:
        r = evaluation_residue(holo, d, m) - evaluation_residue(gamma, d, m)
        counts[r % m] += 1
    mixed_exact = CycNum.from_group_ring(m, counts, n) == target
    conj_exact = node_sum(design, alpha).conj() * Fraction(1, n) == target.conj()
    base = verify_exactness(rule, provider, alpha)
    if not (mixed_exact == base == conj_exact):
        raise InvariantError(
            f"exactness on z^{alpha} ({base}), its conjugate ({conj_exact}) and the mixed "
            f"monomial ({mixed_exact}) disagree"
        )
    return mixed_exact
