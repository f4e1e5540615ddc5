"""Exact integer/rational arithmetic and the closed-form combinatorial
quantities attached to degree k+1 pencils on curves of genus 2k.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`,
which is always kept in lowest terms with a positive denominator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Rational",
    "HarrisCounts",
    "binomial",
    "catalan_N",
    "alpha",
    "moment_A",
    "harris_pencil_counts",
    "restricted_degree_normalized",
    "e0_degree_normalized",
    "brill_noether_rho",
    "general_position_inequalities",
    "as_rational",
]

Rational = Fraction


def as_rational(x: int | str | Fraction) -> Fraction:
    """Coerce ``x`` to an exact rational; floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def _require_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def _require_j(k: int, j: int) -> None:
    _require_positive("k", k)
    if not isinstance(j, int) or not 1 <= j <= k:
        raise ValueError(f"j must satisfy 1 <= j <= k={k}, got {j!r}")


def binomial(n: int, r: int) -> int:
    """Binomial coefficient, zero outside ``0 <= r <= n``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def catalan_N(k: int) -> int:
    """Number of g^1_{k+1} on a general curve of genus 2k: C(2k, k+1)/k."""
    _require_positive("k", k)
    q, r = divmod(binomial(2 * k, k + 1), k)
    assert r == 0
    return q


def alpha(k: int, j: int) -> Fraction:
    """Parity-split closed form appearing in the delta_j coefficient of [D_2]."""
    _require_j(k, j)
    h = j // 2
    if j % 2 == 0:
        return Fraction(j * (2 * k - j) + k, k * (k + 1)) * (
            binomial(j, h) * binomial(2 * k - j, k - h)
        )
    return Fraction((j + 1) * (2 * k - j), k * (k + 1)) * (
        binomial(j + 1, 1 + h) * binomial(2 * k - j - 1, k - 1 - h)
    )


def moment_A(k: int, j: int, i: int) -> Fraction:
    """i-th moment of the ramification order j+1-2c over the E_{j,c} family:

        A_i(j) = 1/((j+1)(2k+1-j)) * sum_c (j+1-2c)^i C(j+1, c) C(2k-j+1, k+1-c)
    """
    _require_j(k, j)
    _require_positive("i", i)
    total = sum(
        (j + 1 - 2 * c) ** i * binomial(j + 1, c) * binomial(2 * k - j + 1, k + 1 - c)
        for c in range(j // 2 + 1)
    )
    return Fraction(total, (j + 1) * (2 * k + 1 - j))


@dataclass(frozen=True)
class HarrisCounts:
    """Pencil counts on a general curve of genus 2k-1.

    a: pencils of degree k+1 with gamma >= 2p for a fixed general p
    b: pencils of type (3)
    c: pairs (gamma, q) with gamma >= p + 2q
    d: pencils of type (2,2)
    """

    k: int
    a: int
    b: int
    c: int
    d: int


def harris_pencil_counts(k: int) -> HarrisCounts:
    _require_positive("k", k)
    n = catalan_N(k)
    return HarrisCounts(
        k=k,
        a=n,
        b=12 * (k - 1) * n,
        c=5 * (k - 1) * n,
        d=12 * (k - 1) * (k - 2) * n,
    )


def restricted_degree_normalized(k: int, j: int, c: int) -> Fraction:
    """Degree of pi restricted to E_{j,c} over Delta_j, divided by (6k)!."""
    _require_j(k, j)
    if not isinstance(c, int) or not 0 <= c <= j // 2:
        raise ValueError(f"c must satisfy 0 <= c <= {j // 2}, got {c!r}")
    m = j + 1 - 2 * c
    return Fraction(
        m * m * binomial(j + 1, c) * binomial(2 * k - j + 1, k + 1 - c),
        (j + 1) * (2 * k - j + 1),
    )


def e0_degree_normalized(k: int) -> Fraction:
    """Degree of pi restricted to E_0 divided by (6k)!; half the generic degree."""
    return Fraction(catalan_N(k), 2)


def brill_noether_rho(g: int, r: int, d: int) -> int:
    return g - (r + 1) * (g + r - d)


def general_position_inequalities(k: int) -> bool:
    """Check the counting inequalities used to pick a general point q.

    ``k d(k) > (k-2) c(k)`` and ``k b(k) > (k-1) a(k) + c(k)``, where the
    last term bounds the number of points r'' with gamma' >= p + 2r''
    (one point per pair (gamma', q')).
    """
    if not isinstance(k, int) or k < 3:
        raise ValueError(f"k must be an integer >= 3, got {k!r}")
    h = harris_pencil_counts(k)
    first = k * h.d > (k - 2) * h.c
    second = k * h.b > (k - 1) * h.a + h.c
    return first and second
