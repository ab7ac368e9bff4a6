"""Designs on Omega_m^k, monomial evaluation and indicator functions.

A node ``(w_{j_1}, ..., w_{j_k})`` is stored as its residue tuple
``(j_1, ..., j_k)`` and a monomial ``z^alpha`` as its exponent tuple.  On
Omega_m^k a monomial only depends on ``alpha mod m`` and
``z^alpha(d) = w_{[alpha . j]_m}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .cyclo import CycNum, root_power

__all__ = [
    "Design",
    "IndicatorFn",
    "RegularityResult",
    "conjugate_class",
    "evaluate_monomial",
    "evaluation_residue",
    "indicator_coefficients",
    "is_regular_fraction",
    "reduce_exponent",
    "reduced_exponents",
    "support",
]

Node = tuple[int, ...]
Monomial = tuple[int, ...]


def reduce_exponent(alpha: Sequence[int], m: int) -> Monomial:
    """Componentwise residue ``[alpha]_m``."""
    if any(a < 0 for a in alpha):
        raise ValueError(f"exponents must be non-negative, got {tuple(alpha)}")
    return tuple(int(a) % m for a in alpha)


def conjugate_class(alpha: Sequence[int], m: int) -> Monomial:
    """``alpha-bar = ([m - alpha_1]_m, ..., [m - alpha_k]_m)``."""
    return tuple((-a) % m for a in alpha)


def reduced_exponents(m: int, k: int) -> list[Monomial]:
    """All of Z_m^k, in degree-lexicographic order (z_1 > ... > z_k)."""
    return sorted(itertools.product(range(m), repeat=k), key=lambda a: (sum(a), a))


@dataclass(frozen=True)
class Design:
    """A node set D inside the full factorial Omega_m^k.

    Node order is the input order and fixes the row order of every
    evaluation matrix and weight vector derived from the design.
    """

    m: int
    k: int
    nodes: tuple[Node, ...]

    def __post_init__(self) -> None:
        if self.m < 1 or self.k < 1:
            raise ValueError(f"need m >= 1 and k >= 1, got m={self.m}, k={self.k}")
        nodes = tuple(tuple(int(j) for j in d) for d in self.nodes)
        if not nodes:
            raise ValueError("a design needs at least one node")
        for d in nodes:
            if len(d) != self.k:
                raise ValueError(f"node {d} has {len(d)} coordinates, expected k={self.k}")
            if any(not 0 <= j < self.m for j in d):
                raise ValueError(f"node {d} has residues outside [0, {self.m})")
        seen = set()
        for d in nodes:
            if d in seen:
                raise ValueError(f"duplicate node {d}")
            seen.add(d)
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def full_factorial(cls, m: int, k: int) -> Design:
        return cls(m, k, tuple(itertools.product(range(m), repeat=k)))

    @property
    def n(self) -> int:
        return len(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[Node]:
        return iter(self.nodes)

    def is_full_factorial(self) -> bool:
        return self.n == self.m**self.k

    def complex_nodes(self):
        """Nodes as a complex ``(n, k)`` numpy array."""
        import numpy as np

        res = np.asarray(self.nodes, dtype=float)
        return np.exp(-2j * np.pi * res / self.m)


def evaluation_residue(alpha: Sequence[int], d: Sequence[int], m: int) -> int:
    """The residue r with ``z^alpha(d) = w_r``."""
    if len(alpha) != len(d):
        raise ValueError(f"dimension mismatch: monomial has {len(alpha)} exponents, node {len(d)}")
    return sum(a * j for a, j in zip(alpha, d)) % m


def evaluate_monomial(alpha: Sequence[int], d: Sequence[int], m: int) -> CycNum:
    """Exact value of ``z^alpha`` at the node with residues ``d``."""
    return root_power(m, evaluation_residue(alpha, d, m))


def _residue_counts(design: Design, alpha: Sequence[int]) -> list[int]:
    counts = [0] * design.m
    for d in design.nodes:
        counts[evaluation_residue(alpha, d, design.m)] += 1
    return counts


def node_sum(design: Design, alpha: Sequence[int]) -> CycNum:
    """``sum_{d in D} z^alpha(d)`` exactly."""
    return CycNum.from_group_ring(design.m, _residue_counts(design, alpha))


@dataclass(frozen=True)
class IndicatorFn:
    """Coefficients ``b_alpha`` of the indicator polynomial of a design."""

    design: Design
    coeffs: dict = field(repr=False)

    def __getitem__(self, alpha: Sequence[int]) -> CycNum:
        return self.coeffs[reduce_exponent(alpha, self.design.m)]

    def nonzero(self) -> dict:
        return {a: b for a, b in self.coeffs.items() if b}

    def __call__(self, point: Sequence[int]) -> CycNum:
        """Evaluate ``sum_alpha b_alpha z^alpha`` at a point of Omega_m^k."""
        m = self.design.m
        acc = CycNum.from_int(m, 0)
        for a, b in self.coeffs.items():
            if b:
                acc = acc + b * evaluate_monomial(a, point, m)
        return acc


def indicator_coefficients(design: Design) -> IndicatorFn:
    """All ``b_alpha = m^-k sum_{d in D} z^{alpha-bar}(d)`` for alpha in Z_m^k."""
    m, k = design.m, design.k
    scale = m**k
    coeffs = {}
    for alpha in reduced_exponents(m, k):
        coeffs[alpha] = CycNum.from_group_ring(
            m, _residue_counts(design, conjugate_class(alpha, m)), scale
        )
    return IndicatorFn(design, coeffs)


def support(f: IndicatorFn) -> set[Monomial]:
    """Reduced exponents with a nonzero indicator coefficient."""
    return {a for a, b in f.coeffs.items() if b}


@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    witness: Monomial | None = None
    witnesses: tuple[Monomial, ...] = ()

    def __bool__(self) -> bool:
        return self.regular


def is_regular_fraction(design: Design) -> RegularityResult:
    """Check that every monomial's evaluation vector is constant or sums to zero.

    All failing classes are listed in ``witnesses`` (deglex order).  The
    reported ``witness`` is the first failing class of highest total degree,
    i.e. the highest-order interaction that breaks regularity.
    """
    m = design.m
    bad = []
    for alpha in reduced_exponents(m, design.k):
        counts = _residue_counts(design, alpha)
        if max(counts) == design.n:
            continue
        if CycNum.from_group_ring(m, counts).is_zero():
            continue
        bad.append(alpha)
    if not bad:
        return RegularityResult(True)
    top = max(sum(a) for a in bad)
    witness = next(a for a in bad if sum(a) == top)
    return RegularityResult(False, witness, tuple(bad))

