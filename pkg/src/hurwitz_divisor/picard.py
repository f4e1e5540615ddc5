"""Divisor classes on the moduli space of stable curves of genus g = 2k.

A class is stored as its coefficients in the basis lambda, delta_0, ...,
delta_k.  Besides the closed formulas for [D_2] and [D_3], the module
re-derives [D_2] by pushing the Hodge class of the Hurwitz space forward
along its boundary divisors and solving for the unknown E_2 term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactcomb import (
    alpha,
    as_rational,
    catalan_N,
    e0_degree_normalized,
    moment_A,
    restricted_degree_normalized,
)

__all__ = [
    "DivisorClass",
    "BoundaryProfile",
    "LedgerEntry",
    "PushforwardLedger",
    "d3_class",
    "d3_class_forms",
    "d2_class_theorem",
    "kkz_coefficient",
    "pushforward_ledger",
    "d2_class_pipeline",
    "d2_half_from_moments",
    "harris_relation",
    "test_curve_pairing",
    "proportional_to",
    "lambda_class",
    "delta_class",
]


@dataclass(frozen=True)
class DivisorClass:
    """c_lambda * lambda + sum_j c_delta[j] * delta_j on M_{2k} bar."""

    k: int
    c_lambda: Fraction
    c_delta: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "c_lambda", as_rational(self.c_lambda))
        delta = tuple(as_rational(x) for x in self.c_delta)
        if len(delta) != self.k + 1:
            raise ValueError(
                f"expected {self.k + 1} delta coefficients for k={self.k}, got {len(delta)}"
            )
        object.__setattr__(self, "c_delta", delta)

    @classmethod
    def zero(cls, k: int) -> "DivisorClass":
        return cls(k, Fraction(0), (Fraction(0),) * (k + 1))

    @classmethod
    def from_coefficients(cls, k: int, coeffs: Sequence) -> "DivisorClass":
        """Build from ``(c_lambda, c_0, ..., c_k)``."""
        if len(coeffs) != k + 2:
            raise ValueError(f"expected {k + 2} coefficients, got {len(coeffs)}")
        return cls(k, coeffs[0], tuple(coeffs[1:]))

    @property
    def genus(self) -> int:
        return 2 * self.k

    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.c_lambda,) + self.c_delta

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coefficients())

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"cannot combine DivisorClass with {type(other).__name__}")
        if other.k != self.k:
            raise ValueError(f"genus mismatch: k={self.k} vs k={other.k}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            self.k,
            self.c_lambda + other.c_lambda,
            tuple(a + b for a, b in zip(self.c_delta, other.c_delta)),
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return self.scale(-1)

    def scale(self, factor) -> "DivisorClass":
        f = as_rational(factor)
        return DivisorClass(self.k, f * self.c_lambda, tuple(f * x for x in self.c_delta))

    def __mul__(self, factor) -> "DivisorClass":
        if isinstance(factor, DivisorClass):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "lambda": str(self.c_lambda),
            "delta": [str(x) for x in self.c_delta],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DivisorClass":
        genus = int(data["genus"])
        if genus % 2 or genus < 2:
            raise ValueError(f"genus must be even and positive, got {genus}")
        return cls(genus // 2, Fraction(data["lambda"]), tuple(Fraction(x) for x in data["delta"]))

    def __str__(self) -> str:
        terms = [f"{self.c_lambda} lambda"]
        terms += [f"{c} delta_{j}" for j, c in enumerate(self.c_delta)]
        return " + ".join(terms)


def lambda_class(k: int) -> DivisorClass:
    return DivisorClass(k, Fraction(1), (Fraction(0),) * (k + 1))


def delta_class(k: int, j: int) -> DivisorClass:
    if not 0 <= j <= k:
        raise ValueError(f"delta index must lie in 0..{k}, got {j}")
    delta = [Fraction(0)] * (k + 1)
    delta[j] = Fraction(1)
    return DivisorClass(k, Fraction(0), tuple(delta))


# ---------------------------------------------------------------------------
# [D_3] and the closed form of [D_2]
# ---------------------------------------------------------------------------


def _require_k(k: int, minimum: int) -> None:
    if not isinstance(k, int) or k < minimum:
        raise ValueError(f"k must be an integer >= {minimum}, got {k!r}")


def _d3_bracket(k: int, lam: int) -> DivisorClass:
    b0 = 2 * k * k + 4 * k - 1
    bj = [2 * j * (2 * k - j) * (3 * k + 2) for j in range(1, k + 1)]
    return DivisorClass(k, Fraction(lam), tuple(Fraction(-x) for x in [b0] + bj))


def d3_class_forms(k: int) -> tuple[DivisorClass, DivisorClass]:
    """Harris's class of D_3 evaluated in both of its closed forms."""
    _require_k(k, 2)
    pref1 = Fraction(
        12 * math.factorial(2 * k - 3), math.factorial(k + 1) * math.factorial(k - 2)
    )
    form1 = pref1 * _d3_bracket(k, 12 * k * k + 46 * k - 8)
    pref2 = Fraction(3 * catalan_N(k), 2 * k - 1)
    form2 = pref2 * _d3_bracket(k, 2 * (k + 4) * (6 * k - 1))
    return form1, form2


def d3_class(k: int) -> DivisorClass:
    form1, form2 = d3_class_forms(k)
    if form1 != form2:
        raise ArithmeticError(f"the two forms of [D_3] disagree at k={k}: {form1} vs {form2}")
    return form1


def d2_class_theorem(k: int) -> DivisorClass:
    """[D_2] from the closed coefficient formulas."""
    _require_k(k, 1)
    n = catalan_N(k)
    c_lambda = Fraction(6 * n * (6 * k - 1) * (k - 2) * (k + 3), 2 * k - 1)
    c_0 = Fraction(-2 * n * (k - 2) * (3 * k * k + 4 * k - 1), 2 * k - 1)
    c_j = [
        Fraction(-3 * n * j * (2 * k - j) * (6 * k * k - 4 * k - 7), 2 * k - 1)
        + Fraction(9, 2) * j * (2 * k - j) * alpha(k, j)
        for j in range(1, k + 1)
    ]
    return DivisorClass(k, c_lambda, tuple([c_0] + c_j))


# ---------------------------------------------------------------------------
# Hodge class pushforward
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryProfile:
    """Boundary stratum data of the Hurwitz space of degree k+1 covers.

    ``b2`` counts marked branch points on the second component and ``mu``
    lists ramification orders over the node.  A *virtual* profile carries
    only the nontrivial parts; it stands in for loci that are empty for
    small k (E_2 at k=2) but whose formal coefficient is still needed.
    """

    b2: int
    mu: tuple[int, ...]
    virtual: bool = False

    def __post_init__(self) -> None:
        mu = tuple(sorted((int(x) for x in self.mu), reverse=True))
        if not mu or any(x < 1 for x in mu):
            raise ValueError(f"ramification orders must be positive, got {self.mu!r}")
        if self.b2 < 0:
            raise ValueError(f"b2 must be nonnegative, got {self.b2}")
        object.__setattr__(self, "mu", mu)

    @property
    def m(self) -> int:
        return math.lcm(*self.mu)

    def validate(self, k: int) -> None:
        if self.b2 > 6 * k:
            raise ValueError(f"b2={self.b2} exceeds the 6k={6 * k} branch points")
        if not self.virtual and sum(self.mu) != k + 1:
            raise ValueError(f"mu={self.mu} is not a partition of k+1={k + 1}")

    @classmethod
    def e0(cls, k: int) -> "BoundaryProfile":
        return cls(6 * k - 2, (1,) * (k + 1))

    @classmethod
    def e2(cls, k: int) -> "BoundaryProfile":
        if k >= 3:
            return cls(6 * k - 2, (2, 2) + (1,) * (k - 3))
        return cls(6 * k - 2, (2, 2), virtual=True)

    @classmethod
    def e3(cls, k: int) -> "BoundaryProfile":
        return cls(6 * k - 2, (3,) + (1,) * (k - 2))

    @classmethod
    def ejc(cls, k: int, j: int, c: int) -> "BoundaryProfile":
        m = j + 1 - 2 * c
        return cls(3 * j, (m,) + (1,) * (k - j + 2 * c))


def kkz_coefficient(k: int, profile: BoundaryProfile) -> Fraction:
    """Coefficient of a boundary divisor in the Hodge class of the Hurwitz space:

        m(mu) * [ b2 (6k - b2) / (8 (6k - 1)) - (k + 1 - sum_i 1/m_i) / 12 ]

    Since the parts sum to k+1, ``k + 1 - sum 1/m_i = sum (m_i - 1/m_i)``;
    the latter is used so that virtual profiles evaluate the same way.
    """
    _require_k(k, 1)
    profile.validate(k)
    b2 = profile.b2
    defect = sum((Fraction(x) - Fraction(1, x) for x in profile.mu), Fraction(0))
    return profile.m * (Fraction(b2 * (6 * k - b2), 8 * (6 * k - 1)) - defect / 12)


@dataclass(frozen=True)
class LedgerEntry:
    """One boundary divisor in the Hodge-class pushforward.

    ``pushforward`` is the (6k)!-normalized image class when known; for
    E_2 it is ``None`` and ``unknown_multiple`` gives the multiple of
    [D_2] it represents.
    """

    label: str
    profile: BoundaryProfile
    kkz_coeff: Fraction
    pushforward: Optional[DivisorClass]
    unknown_multiple: Fraction = Fraction(0)
    j: Optional[int] = None
    c: Optional[int] = None

    @property
    def m(self) -> int:
        return self.profile.m


@dataclass(frozen=True)
class PushforwardLedger:
    k: int
    entries: tuple[LedgerEntry, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def entry(self, label: str) -> LedgerEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "entries": [
                {
                    "label": e.label,
                    "b2": e.profile.b2,
                    "mu": list(e.profile.mu),
                    "virtual": e.profile.virtual,
                    "m": e.m,
                    "kkz_coeff": str(e.kkz_coeff),
                    "pushforward": None if e.pushforward is None else e.pushforward.to_json(),
                    "unknown_multiple_of_D2": str(e.unknown_multiple),
                }
                for e in self.entries
            ],
        }


def pushforward_ledger(k: int) -> PushforwardLedger:
    _require_k(k, 2)
    entries = []
    p = BoundaryProfile.e0(k)
    entries.append(
        LedgerEntry("E0", p, kkz_coefficient(k, p), e0_degree_normalized(k) * delta_class(k, 0))
    )
    p = BoundaryProfile.e2(k)
    # pi_*[E_2] = (6k)! [D_2] / 2
    entries.append(LedgerEntry("E2", p, kkz_coefficient(k, p), None, Fraction(1, 2)))
    p = BoundaryProfile.e3(k)
    # pi_*[E_3] = (6k)! [D_3] / 2
    entries.append(LedgerEntry("E3", p, kkz_coefficient(k, p), Fraction(1, 2) * d3_class(k)))
    for j in range(1, k + 1):
        for c in range(j // 2 + 1):
            p = BoundaryProfile.ejc(k, j, c)
            entries.append(
                LedgerEntry(
                    f"E{j},{c}",
                    p,
                    kkz_coefficient(k, p),
                    restricted_degree_normalized(k, j, c) * delta_class(k, j),
                    j=j,
                    c=c,
                )
            )
    return PushforwardLedger(k, tuple(entries))


def d2_class_pipeline(k: int) -> DivisorClass:
    """[D_2] solved from pi_*(lambda_H) = deg(pi) * lambda.

    With everything divided by (6k)!, the left side is N * lambda and the
    right side is the KKZ-weighted sum of the ledger pushforwards; the only
    unknown is the E_2 term.
    """
    ledger = pushforward_ledger(k)
    known = DivisorClass.zero(k)
    unknown_weight = Fraction(0)
    for e in ledger:
        if e.pushforward is None:
            unknown_weight += e.kkz_coeff * e.unknown_multiple
        else:
            known = known + e.kkz_coeff * e.pushforward
    if unknown_weight == 0:
        raise ArithmeticError("E_2 does not enter the Hodge class relation")
    lhs = catalan_N(k) * lambda_class(k)
    return (lhs - known).scale(1 / unknown_weight)


def d2_half_from_moments(k: int) -> DivisorClass:
    """[D_2]/2 assembled through the moments A_2, A_3, A_4 of each delta_j family."""
    _require_k(k, 2)
    n = catalan_N(k)
    out = -2 * (6 * k - 1) * n * lambda_class(k)
    out = out + Fraction(3 * k - 5, 6) * d3_class(k)
    out = out + Fraction((3 * k - 1) * n, 2) * delta_class(k, 0)
    for j in range(1, k + 1):
        coeff = Fraction((6 * k - 3 * j) * 3 * j, 4) * moment_A(k, j, 3) + Fraction(
            6 * k - 1, 6
        ) * (moment_A(k, j, 2) - moment_A(k, j, 4))
        out = out + coeff * delta_class(k, j)
    return out


# ---------------------------------------------------------------------------
# Consistency checks
# ---------------------------------------------------------------------------


def harris_relation(cls: DivisorClass) -> Fraction:
    """c_lambda + 12 c_0 - c_1."""
    return cls.c_lambda + 12 * cls.c_delta[0] - cls.c_delta[1]


def test_curve_pairing(cls: DivisorClass) -> Fraction:
    """Degree on the family obtained by gluing a moving point to a fixed one.

    That family has lambda-degree 0, delta_0-degree 2-2g, delta_1-degree 1
    and meets no other boundary divisor.
    """
    return (2 - 2 * cls.genus) * cls.c_delta[0] + cls.c_delta[1]


test_curve_pairing.__test__ = False  # keep pytest from collecting it


def proportional_to(cls: DivisorClass, reference: DivisorClass) -> Optional[Fraction]:
    """Scalar r with ``cls == r * reference``, or None."""
    if cls.k != reference.k:
        raise ValueError(f"genus mismatch: k={cls.k} vs k={reference.k}")
    a, b = cls.coefficients(), reference.coefficients()
    if cls.is_zero():
        return Fraction(0)
    ratio = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                return None
            continue
        r = x / y
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio
