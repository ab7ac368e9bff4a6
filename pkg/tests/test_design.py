import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubroots import (
    CycNum,
    Design,
    conjugate_class,
    evaluate_monomial,
    indicator_coefficients,
    is_regular_fraction,
    reduce_exponent,
    reduced_exponents,
    root_power,
    support,
)
from cubroots.design import node_sum

W4 = root_power(4, 1)
W3 = root_power(3, 1)


def test_evaluate_monomial_examples():
    assert evaluate_monomial((0, 0, 0), (1, 2, 0), 3) == 1
    assert evaluate_monomial((1, 1, 0, 1), (1, 1, 0, 1), 2) == -1
    assert evaluate_monomial((1, 2), (1, 1), 4) == root_power(4, 3)


def test_evaluate_monomial_depends_on_reduction_only():
    assert evaluate_monomial((5, 7), (1, 3), 4) == evaluate_monomial((1, 3), (1, 3), 4)


def test_evaluate_monomial_dimension_mismatch():
    with pytest.raises(ValueError):
        evaluate_monomial((1, 2), (0, 0, 0), 3)


def test_reduce_and_conjugate_class():
    assert reduce_exponent((5, 0, 9), 4) == (1, 0, 1)
    assert conjugate_class((1, 0, 3), 4) == (3, 0, 1)
    with pytest.raises(ValueError):
        reduce_exponent((-1, 0), 3)


def test_design_validation():
    with pytest.raises(ValueError, match="duplicate"):
        Design(2, 2, ((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        Design(2, 2, ((0, 2),))
    with pytest.raises(ValueError):
        Design(2, 2, ((0, 1, 1),))
    with pytest.raises(ValueError):
        Design(2, 2, ())
    assert Design.full_factorial(3, 2).n == 9


def test_example1_indicator(example1):
    # f = (2 + z2 z3 + z2 z4 - z1 z2 z3 + z1 z2 z4) / 4
    expected = {
        (0, 0, 0, 0): Fraction(1, 2),
        (0, 1, 1, 0): Fraction(1, 4),
        (0, 1, 0, 1): Fraction(1, 4),
        (1, 1, 1, 0): Fraction(-1, 4),
        (1, 1, 0, 1): Fraction(1, 4),
    }
    f = indicator_coefficients(example1)
    assert f.nonzero() == expected
    assert support(f) == set(expected)


def test_example2_indicator(example2):
    # reference f, with i standing for w_1
    expected = {
        (0, 0): CycNum.from_int(4, Fraction(1, 4)),
        (1, 1): CycNum.from_int(4, Fraction(1, 8)),
        (1, 2): (1 + W4) / 8,
        (2, 1): (1 - W4) / 8,
        (1, 3): -W4 / 8,
        (3, 1): W4 / 8,
        (2, 3): (1 + W4) / 8,
        (3, 2): (1 - W4) / 8,
        (3, 3): CycNum.from_int(4, Fraction(1, 8)),
    }
    assert indicator_coefficients(example2).nonzero() == expected


def test_example3_indicator(example3):
    w1, w2 = W3, root_power(3, 2)
    expected = {
        (0, 0): CycNum.from_int(3, 2),
        (0, 1): CycNum.from_int(3, -1),
        (1, 0): -w2,
        (0, 2): CycNum.from_int(3, -1),
        (1, 1): -w2,
        (2, 0): -w1,
        (1, 2): 2 * w2,
        (2, 1): 2 * w1,
        (2, 2): -w1,
    }
    f = indicator_coefficients(example3)
    assert f.nonzero() == {a: b / 9 for a, b in expected.items()}
    assert support(f) == set(itertools.product(range(3), repeat=2))


@pytest.mark.parametrize("m, k", [(2, 3), (3, 2), (4, 2), (5, 1)])
def test_full_factorial_indicator(m, k):
    f = indicator_coefficients(Design.full_factorial(m, k))
    assert f.nonzero() == {(0,) * k: CycNum.from_int(m, 1)}
    assert support(f) == {(0,) * k}


def test_example2_numeric_nodes_conjugate_plus_convention(example2):
    # w_1 = exp(-2 pi i/4) = -i, so residues [1, 3] are (-i, i); under exp(+2 pi i/m) the
    # node list uses w_1 = i and is the complex conjugate of this one
    plus = np.array([(1, 1), (1j, -1j), (-1, 1j), (-1j, -1)])
    assert np.allclose(example2.complex_nodes(), plus.conj())


@st.composite
def designs(draw, max_points=256):
    m = draw(st.integers(2, 5))
    k = draw(st.integers(1, 3))
    while m**k > max_points:
        k -= 1
    pts = list(itertools.product(range(m), repeat=k))
    chosen = draw(st.lists(st.sampled_from(pts), min_size=1, max_size=min(len(pts), 12), unique=True))
    return Design(m, k, tuple(chosen))


@settings(max_examples=60, deadline=None)
@given(designs())
def test_indicator_round_trip(design):
    f = indicator_coefficients(design)
    members = set(design.nodes)
    for point in itertools.product(range(design.m), repeat=design.k):
        assert f(point) == (1 if point in members else 0)


@settings(max_examples=60, deadline=None)
@given(designs())
def test_indicator_conjugate_symmetry_and_node_sums(design):
    m, k = design.m, design.k
    f = indicator_coefficients(design)
    assert f[(0,) * k] == Fraction(design.n, m**k)
    for alpha in reduced_exponents(m, k):
        assert f[alpha] == f[conjugate_class(alpha, m)].conj()
        assert node_sum(design, alpha) == f[conjugate_class(alpha, m)] * m**k


def test_regular_fraction_examples(example1):
    res = is_regular_fraction(example1)
    assert not res.regular
    assert res.witness == (1, 1, 0, 1)
    assert set(res.witnesses) == {(0, 1, 1, 0), (0, 1, 0, 1), (1, 1, 1, 0), (1, 1, 0, 1)}
    # reference evaluation vector of z1 z2 z4
    vec = [evaluate_monomial((1, 1, 0, 1), d, 2) for d in example1.nodes]
    assert vec == [1, 1, 1, 1, -1, 1, -1, 1]

    assert is_regular_fraction(Design.full_factorial(3, 2)).regular
    assert is_regular_fraction(Design(2, 2, ((0, 0), (1, 1)))).regular


def test_regular_fraction_brute_force():
    # all 4 classes on {(1,1), (-1,-1)}: 1 -> [1,1], z1 -> [1,-1], z2 -> [1,-1], z1z2 -> [1,1]
    design = Design(2, 2, ((0, 0), (1, 1)))
    for alpha in reduced_exponents(2, 2):
        vals = [complex(evaluate_monomial(alpha, d, 2)) for d in design.nodes]
        assert abs(sum(vals)) < 1e-12 or max(abs(v - vals[0]) for v in vals) < 1e-12


def test_example3_not_regular(example3):
    assert not is_regular_fraction(example3).regular
