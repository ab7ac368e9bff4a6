"""Evaluation matrices, correct pairs and quotient bases over Q(w_m).

Everything here is decision-exact: ranks come from elimination over the
cyclotomic field or from the certified modular test in ``modular``, never
from a floating-point threshold.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .cyclo import CycNum, root_power
from .design import Design, Monomial, evaluation_residue, reduce_exponent, reduced_exponents
from .modular import ModularSpan, fits

__all__ = [
    "MonomialBasis",
    "SpanTracker",
    "evaluation_matrix",
    "exact_rank",
    "is_correct_pair",
    "quotient_basis",
    "residue_rank",
    "residue_span",
    "solve",
    "term_order",
]


class MonomialBasis(tuple):
    """An ordered tuple of distinct reduced exponents.

    The constant monomial, when present, is moved to the front so that the
    first column of every evaluation matrix is the all-ones vector.
    """

    def __new__(cls, monomials: Iterable[Sequence[int]], m: int):
        mons = [reduce_exponent(a, m) for a in monomials]
        if len(set(mons)) != len(mons):
            raise ValueError(f"basis has repeated reduced monomials: {mons}")
        if len({len(a) for a in mons}) > 1:
            raise ValueError("basis monomials have different numbers of variables")
        if mons:
            one = (0,) * len(mons[0])
            if one in mons and mons[0] != one:
                mons.remove(one)
                mons.insert(0, one)
        obj = super().__new__(cls, mons)
        obj.m = m
        return obj

    def __repr__(self) -> str:
        return f"MonomialBasis({list(self)!r}, m={self.m})"


def term_order(m: int, k: int, order="deglex") -> list[Monomial]:
    """Candidate monomials in scan order.

    ``order`` is ``"deglex"`` (total degree, then lex with z_1 > ... > z_k)
    or an explicit sequence of exponent tuples, used as given after reduction.
    """
    if isinstance(order, str):
        if order != "deglex":
            raise ValueError(f"unknown term order {order!r}; use 'deglex' or an explicit list")
        return reduced_exponents(m, k)
    out, seen = [], set()
    for a in order:
        a = reduce_exponent(a, m)
        if len(a) != k:
            raise ValueError(f"monomial {a} does not have k={k} exponents")
        if a not in seen:
            seen.add(a)
            out.append(a)
    return out


def evaluation_matrix(design: Design, basis: Sequence[Sequence[int]]) -> list[list[CycNum]]:
    """``X[d][s] = s(d)`` with rows in node order and columns in basis order."""
    m = design.m
    for s in basis:
        if len(s) != design.k:
            raise ValueError(f"monomial {tuple(s)} has {len(s)} exponents, design has k={design.k}")
    return [[root_power(m, evaluation_residue(s, d, m)) for s in basis] for d in design.nodes]


class SpanTracker:
    """Incremental exact span membership for column vectors of length n.

    Each accepted vector is kept in reduced echelon form with a unit pivot,
    so testing a new vector costs one forward reduction.
    """

    def __init__(self, n: int, m: int) -> None:
        self.n = n
        self.m = m
        self._rows: list[tuple[int, list[CycNum]]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Sequence[CycNum]) -> list[CycNum]:
        v = list(v)
        for p, row in self._rows:
            c = v[p]
            if c:
                for i in range(p, self.n):
                    if row[i]:
                        v[i] = v[i] - c * row[i]
        return v

    def is_independent(self, v: Sequence[CycNum]) -> bool:
        return any(self._reduce(v))

    def add(self, v: Sequence[CycNum]) -> bool:
        """Append ``v`` if it enlarges the span; report whether it did."""
        r = self._reduce(v)
        p = next((i for i, x in enumerate(r) if x), None)
        if p is None:
            return False
        inv = r[p].inv()
        r = [x * inv if x else x for x in r]
        self._rows.append((p, r))
        return True


class _ExactResidueSpan:
    """SpanTracker fed with residue vectors; used when the modular tables would be too large."""

    def __init__(self, n: int, m: int) -> None:
        self._tracker = SpanTracker(n, m)
        self.m = m

    @property
    def rank(self) -> int:
        return self._tracker.rank

    def _vec(self, residues):
        return [root_power(self.m, r) for r in residues]

    def is_independent(self, residues) -> bool:
        return self._tracker.is_independent(self._vec(residues))

    def add(self, residues) -> bool:
        return self._tracker.add(self._vec(residues))


def residue_span(n: int, m: int, method: str = "auto"):
    """Span tracker for vectors whose entries are powers of w, given by exponent.

    ``method`` is ``"auto"``, ``"modular"`` or ``"field"``.
    """
    if method not in ("auto", "modular", "field"):
        raise ValueError(f"unknown method {method!r}")
    if method == "modular" or (method == "auto" and fits(n, m)):
        return ModularSpan(n, m)
    return _ExactResidueSpan(n, m)


def _residues(design: Design, alpha: Sequence[int]) -> list[int]:
    if len(alpha) != design.k:
        raise ValueError(f"monomial {tuple(alpha)} has {len(alpha)} exponents, design has k={design.k}")
    return [evaluation_residue(alpha, d, design.m) for d in design.nodes]


def residue_rank(design: Design, basis: Sequence[Sequence[int]], method: str = "auto") -> int:
    """Exact rank of ``X_{D,S}``."""
    span = residue_span(design.n, design.m, method)
    for s in basis:
        span.add(_residues(design, s))
    return span.rank


def exact_rank(matrix: Sequence[Sequence[CycNum]]) -> int:
    """Rank over Q(w_m) by forward elimination, pivoting on the first nonzero entry."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    prev_inv = None
    for c in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivot = rows[rank][c]
        top = rows[rank]
        # Bareiss step: the division by the previous pivot is exact, so entries
        # stay in Z[w] when the input is integral
        for r in range(rank + 1, n_rows):
            f = rows[r][c]
            new = [pivot * x - f * y if f else pivot * x for x, y in zip(rows[r][c + 1 :], top[c + 1 :])]
            if prev_inv is not None:
                new = [x * prev_inv if x else x for x in new]
            rows[r] = [x * 0 for x in rows[r][: c + 1]] + new
        prev_inv = pivot.inv()
        rank += 1
        if rank == n_rows:
            break
    return rank


def is_correct_pair(design: Design, basis: Sequence[Sequence[int]]) -> bool:
    """True iff ``X_{D,S}`` is square and nonsingular."""
    if len(basis) != design.n:
        return False
    return residue_rank(design, basis) == design.n


def solve(matrix: Sequence[Sequence[CycNum]], rhs: Sequence[CycNum]) -> list[CycNum]:
    """Solve a square nonsingular system exactly by Gauss-Jordan elimination."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise ZeroDivisionError(f"singular system: no pivot in column {c}")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inv()
        aug[c] = [x * inv if x else x for x in aug[c]]
        for r in range(n):
            f = aug[r][c]
            if r != c and f:
                aug[r] = [x - f * y if y else x for x, y in zip(aug[r], aug[c])]
    return [row[n] for row in aug]


def quotient_basis(design: Design, order="deglex") -> MonomialBasis:
    """Monomial basis of the functions on D, greedily extracted in term order.

    A candidate is kept iff its evaluation vector lies outside the span of
    the vectors already kept.  This is the basis-extraction core of the
    Buchberger-Moeller algorithm; border generators are not produced.
    """
    tracker = residue_span(design.n, design.m)
    chosen: list[Monomial] = []
    for alpha in term_order(design.m, design.k, order):
        if tracker.add(_residues(design, alpha)):
            chosen.append(alpha)
            if len(chosen) == design.n:
                break
    if len(chosen) != design.n:
        # only reachable with an explicit order that omits monomials
        raise ValueError(
            f"term order spans only {len(chosen)} of {design.n} dimensions on this design"
        )
    return MonomialBasis(chosen, design.m)
