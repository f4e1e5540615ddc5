"""Verification suites shared by ``hdl verify`` and the test-suite.

Every check returns a :class:`CheckResult`; on failure ``detail`` carries the
exact values that disagreed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import braid, exactcomb as ec, picard, symcover


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _first_failure(items: Iterable[tuple[bool, str]]) -> tuple[bool, str]:
    count = 0
    for ok, detail in items:
        count += 1
        if not ok:
            return False, detail
    return True, f"{count} cases"


def _check(name: str, items: Iterable[tuple[bool, str]]) -> CheckResult:
    ok, detail = _first_failure(items)
    return CheckResult(name, ok, detail)


def _jk(k_max: int) -> Iterator[tuple[int, int]]:
    for k in range(1, k_max + 1):
        for j in range(1, k + 1):
            yield k, j


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def check_catalan_forms(k_max: int) -> CheckResult:
    def items():
        for k in range(1, k_max + 1):
            n = ec.catalan_N(k)
            a = Fraction(ec.binomial(2 * k, k + 1), k)
            b = Fraction(ec.binomial(2 * k, k), k + 1)
            yield n == a == b, f"k={k}: N={n}, C(2k,k+1)/k={a}, C(2k,k)/(k+1)={b}"

    return _check("catalan N = C(2k,k+1)/k = C(2k,k)/(k+1)", items())


def check_moments(k_max: int) -> CheckResult:
    def items():
        for k, j in _jk(k_max):
            n = ec.catalan_N(k)
            a2, a3, a4 = (ec.moment_A(k, j, i) for i in (2, 3, 4))
            a4_closed = (1 + Fraction(3 * j * (2 * k - j), 2 * k - 1)) * n
            al = ec.alpha(k, j)
            yield (
                a2 == n and a4 == a4_closed and a3 == al,
                f"k={k}, j={j}: A2={a2} (N={n}), A4={a4} (closed {a4_closed}), A3={a3} (alpha {al})",
            )

    return _check("moments A2 = N, A4 closed form, A3 = alpha", items())


def check_degree_sums(k_max: int) -> CheckResult:
    def items():
        for k, j in _jk(k_max):
            s = sum(ec.restricted_degree_normalized(k, j, c) for c in range(j // 2 + 1))
            yield s == ec.catalan_N(k), f"k={k}, j={j}: sum={s}, N={ec.catalan_N(k)}"

    return _check("sum_c deg(E_jc -> Delta_j) = N", items())


def check_harris_counts(k_max: int) -> CheckResult:
    def items():
        for k in range(1, k_max + 1):
            h = ec.harris_pencil_counts(k)
            ok = (
                min(h.a, h.b, h.c, h.d) >= 0
                and h.b == 12 * (k - 1) * h.a
                and h.c == 5 * (k - 1) * h.a
                and h.d == 12 * (k - 1) * (k - 2) * h.a
            )
            yield ok, f"k={k}: {h}"

    return _check("pencil count ratios b=12(k-1)a, c=5(k-1)a, d=12(k-1)(k-2)a", items())


def check_general_position(k_max: int) -> CheckResult:
    def items():
        for k in range(3, k_max + 1):
            yield ec.general_position_inequalities(k), f"k={k}"

    return _check("general position inequalities (k >= 3)", items())


def identities_suite(k_max: int) -> list[CheckResult]:
    return [
        check_catalan_forms(k_max),
        check_moments(k_max),
        check_degree_sums(k_max),
        check_harris_counts(k_max),
        check_general_position(k_max),
    ]


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------


def check_k2_vanishing() -> CheckResult:
    t = picard.d2_class_theorem(2)
    p = picard.d2_class_pipeline(2)
    return CheckResult(
        "[D_2] vanishes at k=2 (theorem and pipeline)",
        t.is_zero() and p.is_zero(),
        f"theorem={t}; pipeline={p}",
    )


def check_pipeline_equals_theorem(k_max: int) -> CheckResult:
    def items():
        for k in range(2, k_max + 1):
            t, p = picard.d2_class_theorem(k), picard.d2_class_pipeline(k)
            yield t == p, f"k={k}: theorem={t}; pipeline={p}"

    return _check("pipeline [D_2] == closed-form [D_2]", items())


def check_moment_display(k_max: int) -> CheckResult:
    def items():
        for k in range(2, k_max + 1):
            t = picard.d2_class_theorem(k)
            h = picard.d2_half_from_moments(k)
            yield h.scale(2) == t, f"k={k}: 2*display={h.scale(2)}; theorem={t}"

    return _check("moment-form [D_2]/2 doubles to closed form", items())


def check_harris_relation(k_max: int) -> CheckResult:
    def items():
        for k in range(1, k_max + 1):
            r = picard.harris_relation(picard.d2_class_theorem(k))
            yield r == 0, f"k={k}: c_lambda + 12 c_0 - c_1 = {r}"

    return _check("c_lambda + 12 c_0 - c_1 = 0", items())


def check_test_curve(k_max: int) -> CheckResult:
    def items():
        for k in range(1, k_max + 1):
            n = ec.catalan_N(k)
            got = picard.test_curve_pairing(picard.d2_class_theorem(k))
            lemma = (k - 1) * (k - 2) * (12 * k + 10) * n
            alt = 2 * (k - 1) * (k - 2) * (6 * k + 5) * n
            yield got == lemma == alt, f"k={k}: pairing={got}, expected={lemma}"

    return _check("test curve pairing = (k-1)(k-2)(12k+10)N", items())


K1_REFERENCE = (10, -1, -2)


def check_k1_degeneration() -> CheckResult:
    cls = picard.d2_class_theorem(1)
    ref = picard.DivisorClass.from_coefficients(1, K1_REFERENCE)
    ratio = picard.proportional_to(cls, ref)
    # (10, -1, -1) is the other reading of the genus-2 relation; it must NOT match.
    other = picard.proportional_to(cls, picard.DivisorClass.from_coefficients(1, (10, -1, -1)))
    return CheckResult(
        "k=1 class proportional to 10 lambda - delta_0 - 2 delta_1 with ratio -12",
        ratio == -12 and other is None,
        f"class={cls}; ratio={ratio}; ratio to (10,-1,-1)={other}",
    )


def check_d3_forms(k_max: int) -> CheckResult:
    def items():
        for k in range(2, k_max + 1):
            f1, f2 = picard.d3_class_forms(k)
            yield f1 == f2, f"k={k}: {f1} vs {f2}"

    return _check("two closed forms of [D_3] agree", items())


def kkz_expected(k: int) -> dict[str, Fraction]:
    """Closed-form specialized coefficients, keyed by ledger label."""
    out = {
        "E0": Fraction(3 * k - 1, 2 * (6 * k - 1)),
        "E2": Fraction(-1, 2 * (6 * k - 1)),
        "E3": Fraction(3 * k - 5, 6 * (6 * k - 1)),
    }
    for j in range(1, k + 1):
        for c in range(j // 2 + 1):
            m = j + 1 - 2 * c
            out[f"E{j},{c}"] = m * (
                Fraction((6 * k - 3 * j) * 3 * j, 8 * (6 * k - 1)) - Fraction(1, 12) * (m - Fraction(1, m))
            )
    return out


def check_kkz(k_max: int) -> CheckResult:
    def items():
        for k in range(2, k_max + 1):
            expected = kkz_expected(k)
            ledger = picard.pushforward_ledger(k)
            labels = [e.label for e in ledger]
            yield sorted(labels) == sorted(expected), f"k={k}: labels {labels}"
            for e in ledger:
                got = picard.kkz_coefficient(k, e.profile)
                yield got == expected[e.label], f"k={k}, {e.label}: got {got}, expected {expected[e.label]}"

    return _check("KKZ coefficients match the specialized values", items())


def classes_suite(k_max: int) -> list[CheckResult]:
    return [
        check_k2_vanishing(),
        check_pipeline_equals_theorem(k_max),
        check_moment_display(k_max),
        check_harris_relation(k_max),
        check_test_curve(k_max),
        check_k1_degeneration(),
        check_d3_forms(k_max),
        check_kkz(k_max),
    ]


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------

# (d, b, cycle type) instances certified at desk scale.
BRAID_CASES: tuple[tuple[int, int, tuple[int, ...]], ...] = (
    (3, 2, (3,)),
    (3, 4, (3,)),
    (4, 4, (2, 2)),
    (4, 6, (3, 1)),
)


def check_hurwitz_oracle() -> CheckResult:
    a = symcover.count_covers(3, 2, (3,))
    b = symcover.count_covers(2, 2, (1, 1))
    return CheckResult("Hurwitz numbers (3,2,(3)) = 1 and (2,2,(1,1)) = 1", a == 1 and b == 1, f"{a}, {b}")


def _products_preserved(d: int, b: int, phi: symcover.Permutation) -> tuple[bool, str]:
    gens = braid.full_braid_generators(b) + braid.pure_braid_generators(b)
    for t in symcover.enumerate_xi(d, b, phi):
        for w in gens:
            for word in (w, w.inverse()):
                moved = braid.act_word(word, t)
                if moved.product != phi:
                    return False, f"{word} sends {t} to {moved} with product {moved.product}"
    return True, ""


def check_braid_certificates(workers: int = 1) -> list[CheckResult]:
    out = []
    for d, b, mu in BRAID_CASES:
        phi = symcover.representative(mu)
        full = braid.orbits(d, b, phi, braid.FULL, workers=workers)
        pure = braid.certify_pure_braid_transitivity(d, b, mu, workers=workers)
        ok = (
            full.transitive
            and pure.transitive
            and pure.sigma0_in_orbit is True
            and full.total_tuples == pure.total_tuples > 0
        )
        out.append(
            CheckResult(
                f"braid transitivity on Xi^({d},{b})_{phi}",
                ok,
                f"full={full.orbit_sizes}, pure={pure.orbit_sizes}, sigma0={pure.sigma0} "
                f"in orbit={pure.sigma0_in_orbit}",
            )
        )
        ok, detail = _products_preserved(d, b, phi)
        out.append(CheckResult(f"products preserved on Xi^({d},{b})_{phi}", ok, detail))
    return out


def sigma0_cases(d_max: int = 8) -> Iterator[tuple[str, dict]]:
    """Every canonical sigma_0 variant with degree <= d_max, at minimal admissible length."""
    for d in range(3, d_max + 1):
        yield "triple", {"d": d, "b": symcover.minimal_sigma0_length("triple", d)}
    for d in range(4, d_max + 1):
        yield "two-two", {"d": d, "b": symcover.minimal_sigma0_length("two-two", d)}
    for k in range(1, d_max + 1):
        for j in range(1, k + 1):
            for c in range(j // 2 + 1):
                if k + 1 - c <= d_max:
                    yield "factor1", {"k": k, "j": j, "c": c}
                if j + 1 - c <= d_max:
                    yield "factor2", {"k": k, "j": j, "c": c}


def check_sigma0(d_max: int = 8) -> CheckResult:
    def items():
        for variant, params in sigma0_cases(d_max):
            t = symcover.build_sigma0(variant, **params)
            target = symcover.sigma0_target(variant, t.d, **{x: params[x] for x in ("k", "j", "c") if x in params})
            yield t.product == target and t.generates(), f"{variant} {params}: {t} -> {t.product}"

    return _check(f"sigma_0 well-formed for d <= {d_max}", items())


def _factor_cases(k_max: int, candidate_limit: int) -> Iterator[tuple[str, int, int, int, int, int]]:
    for k in range(1, k_max + 1):
        for j in range(1, k + 1):
            for c in range(j // 2 + 1):
                for variant, d, b in (
                    ("factor1", k + 1 - c, 6 * k - 3 * j),
                    ("factor2", j + 1 - c, 3 * j),
                ):
                    if d >= 2 and math.comb(d, 2) ** b <= candidate_limit:
                        yield variant, k, j, c, d, b


def check_factor_transitivity(k_max: int, workers: int = 1, candidate_limit: int = 2 * 10**5) -> CheckResult:
    """Pure-braid transitivity for the E_{j,c} factor spaces small enough to enumerate."""

    def items():
        for variant, k, j, c, d, b in _factor_cases(k_max, candidate_limit):
            s0 = symcover.build_sigma0(variant, k=k, j=j, c=c)
            mu = symcover.cycle_type(s0.product)
            r = braid.certify_pure_braid_transitivity(d, b, mu, workers=workers, sigma0=s0)
            yield r.transitive and r.sigma0_in_orbit, f"{variant} k={k} j={j} c={c}: {r.orbit_sizes}"

    return _check(f"pure-braid transitivity on E_jc factor spaces (k <= {k_max})", items())


def check_determinism(workers: int = 4, repetitions: int = 3) -> CheckResult:
    def items():
        for d, b, mu in BRAID_CASES:
            phi = symcover.representative(mu)
            for group in (braid.FULL, braid.PURE):
                ref = braid.orbits(d, b, phi, group, workers=1).dumps()
                for _ in range(repetitions):
                    for w in (1, workers):
                        got = braid.orbits(d, b, phi, group, workers=w).dumps()
                        yield got == ref, f"({d},{b},{mu}) {group} workers={w}: {got} != {ref}"

    return _check(f"orbit reports identical for 1 and {workers} workers", items())


def orbits_suite(k_max: int, workers: int = 1) -> list[CheckResult]:
    return [
        check_hurwitz_oracle(),
        *check_braid_certificates(workers),
        check_sigma0(),
        check_factor_transitivity(k_max, workers),
        check_determinism(max(workers, 2)),
    ]


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "identities": lambda k_max, workers=1: identities_suite(k_max),
    "classes": lambda k_max, workers=1: classes_suite(k_max),
    "orbits": orbits_suite,
}


def run_suite(name: str, k_max: int, workers: int = 1) -> list[CheckResult]:
    if name == "all":
        return [r for s in ("identities", "classes", "orbits") for r in SUITES[s](k_max, workers)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](k_max, workers)
