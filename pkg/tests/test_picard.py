import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hurwitz_divisor import picard
from hurwitz_divisor.exactcomb import catalan_N
from hurwitz_divisor.picard import BoundaryProfile, DivisorClass


def vec(cls):
    return tuple(cls.coefficients())


def test_d3_examples():
    assert vec(picard.d3_class(2)) == (264, -30, -96, -128)
    c3 = picard.d3_class(3)
    assert (c3.c_lambda, c3.c_delta[0]) == (714, -87)


def test_d3_forms_agree():
    for k in range(2, 31):
        f1, f2 = picard.d3_class_forms(k)
        assert f1 == f2


def test_d3_requires_k_at_least_2():
    with pytest.raises(ValueError):
        picard.d3_class(1)


def test_d2_theorem_examples():
    assert picard.d2_class_theorem(2).is_zero()
    assert vec(picard.d2_class_theorem(1)) == (-120, 12, 24)
    assert vec(picard.d2_class_theorem(3)) == (612, -76, -300, -444, -459)


def test_d2_lambda_and_delta0_vanish_at_k2_via_factor():
    cls = picard.d2_class_theorem(2)
    assert cls.c_lambda == 0 and cls.c_delta[0] == 0


@pytest.mark.parametrize(
    "profile_fn,expected",
    [
        (BoundaryProfile.e0, lambda k: Fraction(3 * k - 1, 2 * (6 * k - 1))),
        (BoundaryProfile.e2, lambda k: Fraction(-1, 2 * (6 * k - 1))),
        (BoundaryProfile.e3, lambda k: Fraction(3 * k - 5, 6 * (6 * k - 1))),
    ],
)
def test_kkz_special_profiles(profile_fn, expected):
    for k in range(2, 31):
        assert picard.kkz_coefficient(k, profile_fn(k)) == expected(k)


def test_kkz_partition_form_equals_defect_form():
    # k + 1 - sum 1/m_i computed directly on a genuine partition
    for k in range(3, 12):
        for j in range(1, k + 1):
            for c in range(j // 2 + 1):
                p = BoundaryProfile.ejc(k, j, c)
                direct = p.m * (
                    Fraction(p.b2 * (6 * k - p.b2), 8 * (6 * k - 1))
                    - Fraction(1, 12) * (k + 1 - sum(Fraction(1, x) for x in p.mu))
                )
                assert picard.kkz_coefficient(k, p) == direct


def test_profile_m_is_lcm():
    assert BoundaryProfile.e0(3).m == 1
    assert BoundaryProfile.e2(3).m == 2
    assert BoundaryProfile.e3(3).m == 3
    assert BoundaryProfile(4, (2, 3, 1)).m == 6


def test_invalid_partition_rejected():
    with pytest.raises(ValueError):
        picard.kkz_coefficient(3, BoundaryProfile(16, (2, 1)))
    with pytest.raises(ValueError):
        BoundaryProfile(4, (0, 2))


def test_e2_profile_is_virtual_only_at_k2():
    assert BoundaryProfile.e2(2).virtual
    assert not BoundaryProfile.e2(3).virtual
    assert sum(BoundaryProfile.e2(5).mu) == 6


def test_ledger_k3():
    ledger = picard.pushforward_ledger(3)
    assert len(ledger) == 8
    e10 = ledger.entry("E1,0")
    assert e10.m == 2
    assert e10.pushforward == 5 * picard.delta_class(3, 1)
    assert ledger.entry("E0").pushforward == Fraction(5, 2) * picard.delta_class(3, 0)
    assert ledger.entry("E2").pushforward is None
    assert ledger.entry("E2").unknown_multiple == Fraction(1, 2)
    assert ledger.entry("E3").pushforward == Fraction(1, 2) * picard.d3_class(3)
    json.dumps(ledger.to_json())


def test_ledger_covers_all_jc():
    for k in range(2, 10):
        labels = [e.label for e in picard.pushforward_ledger(k)]
        expected = {"E0", "E2", "E3"} | {f"E{j},{c}" for j in range(1, k + 1) for c in range(j // 2 + 1)}
        assert len(labels) == len(expected) and set(labels) == expected


def test_ledger_m_values():
    for e in picard.pushforward_ledger(6):
        if e.j is not None:
            assert e.m == e.j + 1 - 2 * e.c


def test_pipeline_half_coefficients_k3():
    half = picard.d2_class_pipeline(3).scale(Fraction(1, 2))
    assert half.c_lambda == -2 * 17 * 5 + Fraction(4, 6) * 714 == 306
    assert half.c_delta[0] == Fraction(4, 6) * (-87) + Fraction(8, 2) * 5 == -38


def test_pipeline_k2_zero():
    assert picard.d2_class_pipeline(2).is_zero()


def test_pipeline_rejects_small_k():
    with pytest.raises(ValueError):
        picard.d2_class_pipeline(1)
    with pytest.raises(ValueError):
        picard.pushforward_ledger(1)


def test_pipeline_matches_theorem():
    for k in range(2, 31):
        assert picard.d2_class_pipeline(k) == picard.d2_class_theorem(k)


def test_moment_display_matches_theorem():
    for k in range(2, 16):
        assert picard.d2_half_from_moments(k).scale(2) == picard.d2_class_theorem(k)


def test_harris_relation_examples():
    assert picard.harris_relation(picard.d2_class_theorem(1)) == 0
    assert picard.harris_relation(picard.d2_class_theorem(3)) == 0
    assert picard.harris_relation(DivisorClass.zero(4)) == 0


def test_harris_relation_all_k():
    for k in range(1, 51):
        assert picard.harris_relation(picard.d2_class_theorem(k)) == 0


def test_test_curve_pairing():
    assert picard.test_curve_pairing(picard.d2_class_theorem(3)) == 460
    assert picard.test_curve_pairing(picard.d2_class_theorem(1)) == 0
    for k in range(1, 51):
        n = catalan_N(k)
        value = picard.test_curve_pairing(picard.d2_class_theorem(k))
        assert value == (k - 1) * (k - 2) * (12 * k + 10) * n == 2 * (k - 1) * (k - 2) * (6 * k + 5) * n


def test_proportional_to():
    a = DivisorClass.from_coefficients(1, (-120, 12, 24))
    assert picard.proportional_to(a, DivisorClass.from_coefficients(1, (10, -1, -2))) == -12
    assert picard.proportional_to(DivisorClass.zero(1), a) == 0
    x = DivisorClass.from_coefficients(1, (1, 2, 0))
    y = DivisorClass.from_coefficients(1, (1, 3, 0))
    assert picard.proportional_to(x, y) is None
    assert picard.proportional_to(a, DivisorClass.zero(1)) is None
    with pytest.raises(ValueError):
        picard.proportional_to(a, DivisorClass.zero(2))


def test_class_arithmetic_checks_genus():
    with pytest.raises(ValueError):
        DivisorClass.zero(2) + DivisorClass.zero(3)
    with pytest.raises(ValueError):
        DivisorClass(2, 0, (0, 0))
    with pytest.raises(TypeError):
        DivisorClass(1, 0.5, (0, 0))


fractions = st.fractions(max_denominator=10**6)


@given(st.integers(1, 6).flatmap(lambda k: st.tuples(st.just(k), st.lists(fractions, min_size=k + 2, max_size=k + 2))))
def test_json_round_trip(data):
    k, coeffs = data
    cls = DivisorClass.from_coefficients(k, coeffs)
    text = json.dumps(cls.to_json())
    back = DivisorClass.from_json(json.loads(text))
    assert back == cls
    for s in json.loads(text)["delta"]:
        assert "." not in s


def test_json_shape():
    data = picard.d2_class_theorem(3).to_json()
    assert data == {"genus": 6, "lambda": "612", "delta": ["-76", "-300", "-444", "-459"]}
    half = picard.d2_class_theorem(3).scale(Fraction(1, 4)).to_json()
    assert half["lambda"] == "153" and half["delta"][0] == "-19"
    assert DivisorClass.from_coefficients(1, (Fraction(1, 3), 0, 0)).to_json()["lambda"] == "1/3"
