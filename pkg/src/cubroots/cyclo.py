"""Exact arithmetic in the cyclotomic field Q(w), w a primitive m-th root of unity.

Elements are stored in the power basis 1, w, ..., w^(phi(m)-1) as integer
numerators over a single positive denominator, always reduced modulo the
m-th cyclotomic polynomial.  Two elements are equal iff their canonical
representations coincide, so zero tests are exact and O(phi(m)).

Numerically ``w`` is ``exp(-2*pi*i/m)``.
"""

from __future__ import annotations

import cmath
import re
import threading
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "CycNum",
    "cyclotomic_poly",
    "root_power",
    "sum_of_roots",
]

_LOCK = threading.Lock()
_PHI_TABLE: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    # coefficient lists are low-degree first; den is monic
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("non-zero remainder in cyclotomic division")
    return out


def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    Computed as (x^m - 1) / prod_{d | m, d < m} Phi_d.  Results are memoized.

    >>> cyclotomic_poly(4)
    (1, 0, 1)
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    cached = _PHI_TABLE.get(m)
    if cached is not None:
        return cached
    num = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        num = _poly_exact_div(num, cyclotomic_poly(d))
    phi = tuple(num)
    with _LOCK:
        _PHI_TABLE.setdefault(m, phi)
    return phi


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Canonical coefficients of x^r mod Phi_m for 0 <= r <= max(m, 2*deg - 1)."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    top = max(m, 2 * deg - 1)
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(top + 1):
        rows.append(tuple(cur))
        # multiply by x and reduce x^deg -> -(phi_0 + ... + phi_{deg-1} x^{deg-1})
        carry = cur[-1]
        cur = [0] + cur[:-1]
        if carry:
            cur = [c - carry * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


def _normalize(nums: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    nums = tuple(nums)
    if den < 0:
        nums = tuple(-c for c in nums)
        den = -den
    g = den
    for c in nums:
        g = gcd(g, c)
        if g == 1:
            break
    if not any(nums):
        return nums, 1
    if g > 1:
        nums = tuple(c // g for c in nums)
        den //= g
    return nums, den


class CycNum:
    """An element of Q(w_m), immutable and hashable."""

    __slots__ = ("_m", "_nums", "_den", "_hash")

    def __init__(self, m: int, coeffs: Sequence = (), den: int = 1) -> None:
        deg = len(cyclotomic_poly(m)) - 1
        coeffs = list(coeffs)
        if not all(isinstance(c, int) for c in coeffs) or not isinstance(den, int):
            vals = [Fraction(c) / Fraction(den) for c in coeffs]
            common = 1
            for v in vals:
                common = common * v.denominator // gcd(common, v.denominator)
            coeffs = [int(v * common) for v in vals]
            den = common
        if len(coeffs) > deg:
            coeffs = _reduce_group_ring(m, coeffs)
        coeffs = coeffs + [0] * (deg - len(coeffs))
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self._m = m
        self._nums, self._den = _normalize(coeffs, den)
        self._hash = None

    @classmethod
    def _raw(cls, m: int, nums: tuple[int, ...], den: int) -> CycNum:
        obj = object.__new__(cls)
        obj._m = m
        obj._nums, obj._den = _normalize(nums, den)
        obj._hash = None
        return obj

    @classmethod
    def from_int(cls, m: int, value) -> CycNum:
        """Embed a rational (int or Fraction) into Q(w_m)."""
        value = Fraction(value)
        deg = len(cyclotomic_poly(m)) - 1
        return cls._raw(m, (value.numerator,) + (0,) * (deg - 1), value.denominator)

    @classmethod
    def from_group_ring(cls, m: int, counts: Sequence, den: int = 1) -> CycNum:
        """The value of sum_r counts[r] * w^r (any length, integer or rational)."""
        if all(isinstance(c, int) for c in counts):
            return cls._raw(m, tuple(_reduce_group_ring(m, counts)), den)
        return cls(m, _reduce_group_ring_frac(m, counts), den)

    @classmethod
    def coerce(cls, value, m: int) -> CycNum:
        if isinstance(value, CycNum):
            if value._m != m:
                raise ValueError(f"modulus mismatch: {value._m} != {m}")
            return value
        if isinstance(value, (int, Rational)):
            return cls.from_int(m, value)
        raise TypeError(f"cannot coerce {type(value).__name__} into Q(w_{m})")

    # -- accessors ---------------------------------------------------------
    @property
    def m(self) -> int:
        return self._m

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._nums)

    def __bool__(self) -> bool:
        return any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    # -- arithmetic --------------------------------------------------------
    def _other(self, other) -> CycNum | None:
        if isinstance(other, CycNum):
            if other._m != self._m:
                raise ValueError(f"modulus mismatch: {self._m} != {other._m}")
            return other
        if isinstance(other, (int, Rational)):
            return CycNum.from_int(self._m, other)
        return None

    def __add__(self, other) -> CycNum:
        b = self._other(other)
        if b is None:
            return NotImplemented
        if self._den == b._den:
            nums = tuple(x + y for x, y in zip(self._nums, b._nums))
            return CycNum._raw(self._m, nums, self._den)
        nums = tuple(x * b._den + y * self._den for x, y in zip(self._nums, b._nums))
        return CycNum._raw(self._m, nums, self._den * b._den)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum._raw(self._m, tuple(-c for c in self._nums), self._den)

    def __sub__(self, other) -> CycNum:
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other) -> CycNum:
        b = self._other(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other) -> CycNum:
        b = self._other(other)
        if b is None:
            return NotImplemented
        a_n, b_n = self._nums, b._nums
        if len(a_n) == 1:
            return CycNum._raw(self._m, (a_n[0] * b_n[0],), self._den * b._den)
        conv = [0] * (2 * len(a_n) - 1)
        for i, x in enumerate(a_n):
            if x:
                for j, y in enumerate(b_n):
                    if y:
                        conv[i + j] += x * y
        return CycNum._raw(self._m, tuple(_reduce_group_ring(self._m, conv)), self._den * b._den)

    __rmul__ = __mul__

    def inv(self) -> CycNum:
        """Multiplicative inverse via the extended Euclidean algorithm on (a, Phi_m)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(w)")
        if self.is_rational():
            return CycNum._raw(self._m, (self._den,) + self._nums[1:], self._nums[0])
        phi = [Fraction(c) for c in cyclotomic_poly(self._m)]
        a = [Fraction(c) for c in self._nums]
        # invariant: s * a == r0 (mod phi)
        r0, r1 = _trim(a), _trim(phi)
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r0 is a nonzero constant since Phi_m is irreducible
        scale = r0[0]
        coeffs = [c / scale for c in s0]
        return CycNum(self._m, coeffs) * self._den

    def __truediv__(self, other) -> CycNum:
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self * b.inv()

    def __rtruediv__(self, other) -> CycNum:
        b = self._other(other)
        if b is None:
            return NotImplemented
        return b * self.inv()

    def __pow__(self, e: int) -> CycNum:
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inv()
        e = abs(e)
        out = CycNum.from_int(self._m, 1)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> CycNum:
        """Complex conjugate: w^j -> w^(m - j)."""
        m = self._m
        counts = [0] * m
        for j, c in enumerate(self._nums):
            if c:
                counts[(-j) % m] += c
        return CycNum._raw(m, tuple(_reduce_group_ring(m, counts)), self._den)

    def to_complex(self) -> complex:
        w = cmath.exp(-2j * cmath.pi / self._m)
        acc = 0j
        for j, c in enumerate(self._nums):
            if c:
                acc += c * w**j
        return acc / self._den

    __complex__ = to_complex

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self._m == other._m and self._nums == other._nums and self._den == other._den
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return (
                self.is_rational()
                and self._nums[0] == f.numerator
                and self._den == f.denominator
            )
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._nums[0], self._den))
            else:
                self._hash = hash((self._m, self._nums, self._den))
        return self._hash

    # -- text --------------------------------------------------------------
    def __repr__(self) -> str:
        return f"CycNum({self._m}, {self.to_string()!r})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, symbol: str = "w") -> str:
        """Canonical power-basis rendering such as ``(1/8)+(1/8)w``; rationals print bare."""
        if self.is_rational():
            return str(self.to_fraction())
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            tail = "" if j == 0 else (symbol if j == 1 else f"{symbol}^{j}")
            parts.append(f"({c}){tail}")
        return "+".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str, m: int, symbol: str = "w") -> CycNum:
        """Inverse of :meth:`to_string`; also accepts a bare rational like ``1/3``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty value")
        if s == "0":
            return cls.from_int(m, 0)
        if re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            return cls.from_int(m, Fraction(s))
        term = re.compile(
            r"\(([+-]?\d+(?:/\d+)?)\)(%s(?:\^(\d+))?)?" % re.escape(symbol)
        )
        pos = 0
        counts: dict[int, Fraction] = {}
        while pos < len(s):
            if pos and s[pos] == "+":
                pos += 1
            mt = term.match(s, pos)
            if mt is None:
                raise ValueError(f"cannot parse cyclotomic value {text!r} at offset {pos}")
            power = 0 if mt.group(2) is None else int(mt.group(3) or 1)
            counts[power] = counts.get(power, Fraction(0)) + Fraction(mt.group(1))
            pos = mt.end()
        vec = [Fraction(0)] * (max(counts) + 1)
        for p, c in counts.items():
            vec[p] += c
        return cls.from_group_ring(m, vec)


def _reduce_group_ring(m: int, counts: Sequence[int]) -> list[int]:
    table = _power_table(m)
    deg = len(table[0])
    out = [0] * deg
    for r, c in enumerate(counts):
        if c:
            row = table[r] if r < len(table) else table[r % m]
            for i, t in enumerate(row):
                if t:
                    out[i] += c * t
    return out


def _reduce_group_ring_frac(m: int, counts: Sequence) -> list[Fraction]:
    table = _power_table(m)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    for r, c in enumerate(counts):
        if c:
            row = table[r] if r < len(table) else table[r % m]
            for i, t in enumerate(row):
                if t:
                    out[i] += Fraction(c) * t
    return out


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    lead = b[-1]
    if len(a) < len(b):
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1] or [Fraction(0)])


@lru_cache(maxsize=None)
def _roots(m: int) -> tuple[CycNum, ...]:
    return tuple(CycNum._raw(m, tuple(row), 1) for row in _power_table(m)[:m])


def root_power(m: int, j: int) -> CycNum:
    """The root of unity w_j = w^j in canonical form (j is taken mod m)."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    return _roots(m)[j % m]


def sum_of_roots(m: int) -> CycNum:
    acc = CycNum.from_int(m, 0)
    for j in range(m):
        acc = acc + root_power(m, j)
    return acc
