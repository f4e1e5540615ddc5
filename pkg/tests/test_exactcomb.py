from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from hurwitz_divisor import exactcomb as ec


@lru_cache(maxsize=None)
def pascal(n: int, r: int) -> int:
    """Binomial from Pascal's rule only; independent of math.comb."""
    if r < 0 or r > n:
        return 0
    if r == 0 or r == n:
        return 1
    return pascal(n - 1, r - 1) + pascal(n - 1, r)


@lru_cache(maxsize=None)
def catalan_recursive(n: int) -> int:
    """Catalan numbers via the convolution recurrence."""
    if n == 0:
        return 1
    return sum(catalan_recursive(i) * catalan_recursive(n - 1 - i) for i in range(n))


def moment_oracle(k: int, j: int, i: int) -> Fraction:
    total = sum(
        (j + 1 - 2 * c) ** i * pascal(j + 1, c) * pascal(2 * k - j + 1, k + 1 - c)
        for c in range(j // 2 + 1)
    )
    return Fraction(total, (j + 1) * (2 * k + 1 - j))


@pytest.mark.parametrize("n,r,expected", [(6, 4, 15), (2, 0, 1), (5, 7, 0), (5, -1, 0), (0, 0, 1)])
def test_binomial_examples(n, r, expected):
    assert ec.binomial(n, r) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        ec.binomial(-1, 0)


@given(st.integers(0, 60), st.integers(-3, 65))
def test_binomial_matches_pascal(n, r):
    assert ec.binomial(n, r) == pascal(n, r)


@pytest.mark.parametrize("k,expected", [(1, 1), (3, 5), (4, 14)])
def test_catalan_examples(k, expected):
    assert ec.catalan_N(k) == expected


def test_catalan_rejects_zero():
    with pytest.raises(ValueError):
        ec.catalan_N(0)


def test_catalan_is_the_catalan_sequence():
    for k in range(1, 200):
        n = ec.catalan_N(k)
        assert n == catalan_recursive(k)
        assert Fraction(pascal(2 * k, k + 1), k) == n == Fraction(pascal(2 * k, k), k + 1)


@pytest.mark.parametrize("k,j,expected", [(1, 1, 2), (3, 2, 11), (2, 1, 4)])
def test_alpha_examples(k, j, expected):
    assert ec.alpha(k, j) == expected


@pytest.mark.parametrize("k,j", [(3, 0), (3, 4), (0, 0)])
def test_alpha_range(k, j):
    with pytest.raises(ValueError):
        ec.alpha(k, j)


@pytest.mark.parametrize("k,j,i,expected", [(3, 2, 2, 5), (3, 1, 4, 20), (3, 2, 3, 11), (1, 1, 3, 2)])
def test_moment_examples(k, j, i, expected):
    assert ec.moment_A(k, j, i) == expected
    assert moment_oracle(k, j, i) == expected


def test_moment_out_of_range():
    with pytest.raises(ValueError):
        ec.moment_A(3, 4, 2)
    with pytest.raises(ValueError):
        ec.moment_A(3, 1, 0)


@given(st.integers(1, 50).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, k))))
def test_moment_identities(kj):
    k, j = kj
    n = ec.catalan_N(k)
    assert ec.moment_A(k, j, 2) == n
    assert ec.moment_A(k, j, 4) == (1 + Fraction(3 * j * (2 * k - j), 2 * k - 1)) * n
    assert ec.moment_A(k, j, 3) == ec.alpha(k, j)
    for i in (1, 2, 3, 4, 5):
        assert ec.moment_A(k, j, i) == moment_oracle(k, j, i)


def test_harris_counts_examples():
    h = ec.harris_pencil_counts(3)
    assert (h.a, h.b, h.c, h.d) == (5, 120, 50, 120)
    h = ec.harris_pencil_counts(2)
    assert (h.a, h.b, h.c, h.d) == (2, 24, 10, 0)


def test_harris_counts_ratios():
    for k in range(1, 201):
        h = ec.harris_pencil_counts(k)
        assert min(h.a, h.b, h.c, h.d) >= 0
        assert h.b == 12 * (k - 1) * h.a
        assert h.c == 5 * (k - 1) * h.a
        assert h.d == 12 * (k - 1) * (k - 2) * h.a


@pytest.mark.parametrize("k,j,c,expected", [(3, 1, 0, 5), (3, 2, 0, 3), (3, 2, 1, 2)])
def test_restricted_degree_examples(k, j, c, expected):
    assert ec.restricted_degree_normalized(k, j, c) == expected


def test_restricted_degree_is_product_of_two_cover_counts():
    # deg = a(j, d2) * a(2k-j, d1), the counts of covers of each component
    for k in range(1, 12):
        for j in range(1, k + 1):
            for c in range(j // 2 + 1):
                m = j + 1 - 2 * c
                a2 = Fraction(m, j + 1) * pascal(j + 1, c)
                a1 = Fraction(m, 2 * k - j + 1) * pascal(2 * k - j + 1, k + 1 - c)
                assert ec.restricted_degree_normalized(k, j, c) == a1 * a2


def test_restricted_degree_range():
    with pytest.raises(ValueError):
        ec.restricted_degree_normalized(3, 2, 2)


def test_degree_sum_identity():
    for k in range(1, 51):
        for j in range(1, k + 1):
            total = sum(ec.restricted_degree_normalized(k, j, c) for c in range(j // 2 + 1))
            assert total == ec.catalan_N(k)


@pytest.mark.parametrize("k,expected", [(3, Fraction(5, 2)), (1, Fraction(1, 2)), (4, 7)])
def test_e0_degree(k, expected):
    assert ec.e0_degree_normalized(k) == expected


@pytest.mark.parametrize("g,r,d", [(6, 1, 4), (0, 1, 1), (4, 1, 3)])
def test_brill_noether_zero(g, r, d):
    assert ec.brill_noether_rho(g, r, d) == 0


def test_brill_noether_pencils_of_degree_k_plus_1():
    for k in range(1, 100):
        assert ec.brill_noether_rho(2 * k, 1, k + 1) == 0
    assert ec.brill_noether_rho(5, 1, 4) == 1


def test_general_position_examples():
    assert ec.general_position_inequalities(3)
    h = ec.harris_pencil_counts(3)
    assert (3 * h.d, 1 * h.c) == (360, 50)
    assert ec.general_position_inequalities(10)
    with pytest.raises(ValueError):
        ec.general_position_inequalities(2)


def test_general_position_all_k():
    assert all(ec.general_position_inequalities(k) for k in range(3, 201))


def test_no_floats():
    with pytest.raises(TypeError):
        ec.as_rational(0.5)
    assert ec.as_rational("9/2") == Fraction(9, 2)
