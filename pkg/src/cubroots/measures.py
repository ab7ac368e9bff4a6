"""Moment providers: discrete measures, the zero-mean complex Gaussian, and
a Monte Carlo estimator used to cross-check exactness claims.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .cyclo import CycNum
from .design import Design, Monomial, evaluation_residue

__all__ = [
    "DiscreteMeasure",
    "FloatMoments",
    "GaussianMoments",
    "GaussianSampler",
    "GaussianSpec",
    "MCEstimate",
    "MomentProvider",
    "Nullity",
    "discrete_moment",
    "gaussian_holomorphic_moment",
    "gaussian_null_moment_predicate",
    "gaussian_sampler",
    "mc_estimate_moment",
]


class MomentProvider:
    """Source of the moments ``int z^alpha d(lambda)``.

    Exact providers return rationals or :class:`CycNum`; inexact ones return
    Python complex numbers and carry a tolerance ``tol``.
    """

    k: int
    is_exact: bool = True
    tol: float = 0.0

    def moment(self, alpha: Sequence[int]):
        raise NotImplementedError

    def mixed_moment(self, holo: Sequence[int], anti: Sequence[int]):
        """``int z^holo conj(z)^anti d(lambda)``, or ``None`` when not available."""
        return None

    def lift_invariant(self, alpha: Sequence[int], m: int) -> bool:
        """True when every ``beta`` with ``[beta]_m == alpha`` has the moment of ``alpha``."""
        return False

    @property
    def is_probability(self) -> bool:
        total = self.moment((0,) * self.k)
        if self.is_exact:
            return total == 1
        return abs(complex(total) - 1) <= self.tol


def discrete_moment(mu: DiscreteMeasure, alpha: Sequence[int]) -> CycNum:
    """``sum_atoms mass * z^alpha(atom)``."""
    if len(alpha) != mu.k:
        raise ValueError(f"dimension mismatch: monomial has {len(alpha)} exponents, measure k={mu.k}")
    counts = [Fraction(0)] * mu.m
    for node, mass in mu.atoms:
        counts[evaluation_residue(alpha, node, mu.m)] += mass
    return CycNum.from_group_ring(mu.m, counts)


@dataclass(frozen=True)
class DiscreteMeasure(MomentProvider):
    """Finitely many atoms on Omega_m^k with rational masses."""

    m: int
    k: int
    atoms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self) -> None:
        atoms = []
        for node, mass in self.atoms:
            node = tuple(int(j) for j in node)
            if len(node) != self.k or any(not 0 <= j < self.m for j in node):
                raise ValueError(f"atom {node} is not a point of Omega_{self.m}^{self.k}")
            atoms.append((node, Fraction(mass)))
        object.__setattr__(self, "atoms", tuple(atoms))

    @classmethod
    def uniform(cls, design: Design) -> DiscreteMeasure:
        return cls(design.m, design.k, tuple((d, Fraction(1, design.n)) for d in design.nodes))

    def moment(self, alpha):
        return discrete_moment(self, alpha)

    def mixed_moment(self, holo, anti):
        # conj(z) = z^-1 on the unit circle
        return discrete_moment(self, tuple((a - b) % self.m for a, b in zip(holo, anti)))

    def lift_invariant(self, alpha, m):
        return m % self.m == 0

    @property
    def total_mass(self) -> Fraction:
        return sum((mass for _, mass in self.atoms), Fraction(0))

    @property
    def is_probability(self) -> bool:
        return self.total_mass == 1


def gaussian_holomorphic_moment(alpha: Sequence[int]) -> int:
    """Moment of ``z^alpha`` under any zero-mean complex Gaussian: 1 if alpha == 0 else 0."""
    return 0 if any(alpha) else 1


@dataclass(frozen=True)
class GaussianMoments(MomentProvider):
    """Holomorphic moments of a zero-mean circular complex Gaussian in k variables.

    ``spec`` is optional; when given, mixed moments that the block-imbalance
    criterion proves to be zero are reported as 0.
    """

    k: int
    spec: "GaussianSpec | None" = None

    def moment(self, alpha):
        if len(alpha) != self.k:
            raise ValueError(f"dimension mismatch: monomial has {len(alpha)} exponents, k={self.k}")
        return gaussian_holomorphic_moment(alpha)

    def mixed_moment(self, holo, anti):
        if not any(holo) and not any(anti):
            return 1
        if not any(anti):
            return gaussian_holomorphic_moment(holo)
        if sum(holo) != sum(anti):
            return 0
        if self.spec is not None:
            if gaussian_null_moment_predicate(list(zip(holo, anti)), self.spec) is Nullity.PROVABLY_ZERO:
                return 0
        return None

    def lift_invariant(self, alpha, m):
        return any(a % m for a in alpha)

    @property
    def is_probability(self) -> bool:
        return True


class FloatMoments(MomentProvider):
    """Moments given by a numeric callable; comparisons use ``tol``."""

    is_exact = False

    def __init__(self, k: int, func: Callable[[Monomial], complex], tol: float = 1e-10) -> None:
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        self.k = k
        self.func = func
        self.tol = tol

    def moment(self, alpha):
        return complex(self.func(tuple(alpha)))


class Nullity(enum.Enum):
    PROVABLY_ZERO = "ProvablyZero"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GaussianSpec:
    """Covariance data of a zero-mean p-variate complex Gaussian.

    ``alpha`` is the symmetric matrix of off-diagonal real parts and ``beta``
    the antisymmetric matrix of imaginary parts, so that
    ``Sigma = diag(sigma2) + alpha_offdiag + 1j * beta``.  ``blocks`` are
    0-based index groups, independent across groups.
    """

    p: int
    sigma2: tuple[float, ...]
    alpha: tuple[tuple[float, ...], ...] = None
    beta: tuple[tuple[float, ...], ...] = None
    blocks: tuple[tuple[int, ...], ...] = None

    def __post_init__(self) -> None:
        p = self.p
        if p < 1:
            raise ValueError("p must be positive")
        zeros = tuple((0.0,) * p for _ in range(p))
        object.__setattr__(self, "sigma2", tuple(float(s) for s in self.sigma2))
        for name in ("alpha", "beta"):
            val = getattr(self, name)
            val = zeros if val is None else tuple(tuple(float(x) for x in row) for row in val)
            if len(val) != p or any(len(row) != p for row in val):
                raise ValueError(f"{name} must be a {p}x{p} matrix")
            object.__setattr__(self, name, val)
        if len(self.sigma2) != p:
            raise ValueError(f"sigma2 must have {p} entries")
        blocks = self.blocks if self.blocks is not None else (tuple(range(p)),)
        blocks = tuple(tuple(int(j) for j in b) for b in blocks)
        object.__setattr__(self, "blocks", blocks)
        _check_partition(blocks, p)

        a = np.array(self.alpha)
        b = np.array(self.beta)
        if not np.allclose(a, a.T):
            raise ValueError("alpha must be symmetric")
        if not np.allclose(b, -b.T):
            raise ValueError("beta must be antisymmetric")
        sigma = self.sigma
        which = {j: h for h, blk in enumerate(blocks) for j in blk}
        for j in range(p):
            for k in range(p):
                if which[j] != which[k] and sigma[j, k] != 0:
                    raise ValueError(
                        f"Sigma[{j},{k}] is nonzero but indices {j} and {k} lie in different blocks"
                    )
        if np.min(np.linalg.eigvalsh(sigma)) <= 0:
            raise ValueError("Sigma is not positive definite")

    @property
    def sigma(self) -> np.ndarray:
        """The Hermitian covariance ``E(Z conj(Z)^t)``."""
        a = np.array(self.alpha, dtype=float)
        np.fill_diagonal(a, self.sigma2)
        return a + 1j * np.array(self.beta, dtype=float)

    @property
    def real_covariance(self) -> np.ndarray:
        """Covariance of ``(X_1, Y_1, ..., X_p, Y_p)`` with ``Z = X + iY``.

        ``E(X X^t) = E(Y Y^t) = Re(Sigma)/2`` and ``E(X Y^t) = -Im(Sigma)/2``.
        """
        s = self.sigma
        c = s.real / 2
        kxy = -s.imag / 2
        cov = np.empty((2 * self.p, 2 * self.p))
        cov[0::2, 0::2] = c
        cov[1::2, 1::2] = c
        cov[0::2, 1::2] = kxy
        cov[1::2, 0::2] = kxy.T
        return cov

    def density(self, z) -> np.ndarray:
        """``exp(-conj(z)^t Sigma^-1 z) / (pi^p det Sigma)`` for rows of ``z``."""
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        s = self.sigma
        quad = np.einsum("ni,ij,nj->n", z.conj(), np.linalg.inv(s), z).real
        return np.exp(-quad) / (np.pi**self.p * np.linalg.det(s).real)


def _check_partition(blocks, p: int) -> None:
    flat = [j for b in blocks for j in b]
    if any(not b for b in blocks):
        raise ValueError("empty block in partition")
    if sorted(flat) != list(range(p)):
        raise ValueError(f"blocks {blocks} do not partition the indices 0..{p - 1}")


def gaussian_null_moment_predicate(exponents: Sequence[tuple[int, int]], spec: GaussianSpec | Sequence) -> Nullity:
    """Sufficient condition for ``E(prod z_j^n_j conj(z_j)^m_j) = 0``.

    ``exponents`` holds pairs ``(n_j, m_j)``; ``spec`` is a :class:`GaussianSpec`
    or a bare partition into 0-based blocks.  The moment is provably zero as
    soon as some independence block has unequal holomorphic and
    anti-holomorphic degree.  Otherwise the answer is ``UNKNOWN``.
    """
    blocks = spec.blocks if isinstance(spec, GaussianSpec) else tuple(tuple(b) for b in spec)
    p = len(exponents)
    _check_partition(blocks, p)
    for n, m in exponents:
        if n < 0 or m < 0:
            raise ValueError("exponents must be non-negative")
    for blk in blocks:
        if sum(exponents[j][0] for j in blk) != sum(exponents[j][1] for j in blk):
            return Nullity.PROVABLY_ZERO
    return Nullity.UNKNOWN


class GaussianSampler:
    """Seeded stream of complex Gaussian vectors with covariance ``spec.sigma``."""

    def __init__(self, spec: GaussianSpec, seed=None) -> None:
        self.spec = spec
        self._chol = np.linalg.cholesky(spec.real_covariance)
        self._rng = np.random.default_rng(seed)

    def draw(self, size: int) -> np.ndarray:
        """``(size, p)`` complex samples."""
        xy = self._rng.standard_normal((size, 2 * self.spec.p)) @ self._chol.T
        return xy[:, 0::2] + 1j * xy[:, 1::2]

    def __iter__(self):
        while True:
            yield from self.draw(1024)


def gaussian_sampler(spec: GaussianSpec, seed=None) -> GaussianSampler:
    return GaussianSampler(spec, seed)


@dataclass(frozen=True)
class MCEstimate:
    value: complex
    se_real: float
    se_imag: float
    n: int

    @property
    def se(self) -> float:
        return float(np.hypot(self.se_real, self.se_imag))

    def within(self, target: complex, k_se: float) -> bool:
        return abs(self.value - target) <= k_se * self.se


def mc_estimate_moment(sampler: GaussianSampler, exponents: Sequence[tuple[int, int]], n: int, batch: int = 100_000) -> MCEstimate:
    """Sample mean of ``prod z_j^n_j conj(z_j)^m_j`` with per-component standard errors."""
    if n < 1:
        raise ValueError("sample count must be >= 1")
    if all(a == 0 and b == 0 for a, b in exponents):
        return MCEstimate(1 + 0j, 0.0, 0.0, n)
    total = 0j
    sq_re = sq_im = 0.0
    done = 0
    while done < n:
        z = sampler.draw(min(batch, n - done))
        vals = np.ones(len(z), dtype=complex)
        for j, (a, b) in enumerate(exponents):
            if a:
                vals = vals * z[:, j] ** a
            if b:
                vals = vals * np.conj(z[:, j]) ** b
        total += vals.sum()
        sq_re += float(np.sum(vals.real**2))
        sq_im += float(np.sum(vals.imag**2))
        done += len(z)
    mean = total / n
    if n == 1:
        return MCEstimate(mean, float("inf"), float("inf"), n)
    var_re = max(sq_re - n * mean.real**2, 0.0) / (n - 1)
    var_im = max(sq_im - n * mean.imag**2, 0.0) / (n - 1)
    return MCEstimate(mean, float(np.sqrt(var_re / n)), float(np.sqrt(var_im / n)), n)
