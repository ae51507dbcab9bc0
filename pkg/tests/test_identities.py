"""Closed forms, identity verifiers, and positivity checkers."""

from __future__ import annotations

import json

import pytest

from qconvolve.divisor_sums import (
    divisors,
    sigma,
    sigma_class,
    sigma_odd,
    sigma_star,
    sigma_star_scaled,
)
from qconvolve.errors import NotPrime, PreconditionNotMet
from qconvolve.identities import (
    SERIES1_SPEC,
    MasterFamilyParams,
    R_combination,
    VerificationReport,
    is_prime,
    kronecker_minus4,
    master_family_spec,
    master_positivity_cases,
    primes_below,
    r2_closed,
    r4_closed,
    r8_closed,
    t2_closed,
    t4_closed,
    t6_closed,
    verify_convolution,
    verify_master_positivity,
    verify_oracle_equivalence,
    verify_positivity,
    verify_prime_r2,
    verify_prime_r2_range,
    verify_prime_r4_r8,
    verify_R_positive,
    verify_series1_positivity,
    verify_t2_prime,
    verify_t4,
    verify_t6,
)
from qconvolve.counts import r_oracle, t_oracle
from qconvolve.series import ProductSpec, expand


def test_is_prime_and_sieve_agree():
    sieved = set(primes_below(500))
    for n in range(500):
        assert is_prime(n) == (n in sieved)


def test_kronecker_minus4():
    assert kronecker_minus4(1) == 1
    assert kronecker_minus4(3) == -1
    assert kronecker_minus4(2) == 0
    assert [kronecker_minus4(d) for d in range(1, 9)] == [1, 0, -1, 0, 1, 0, -1, 0]
    with pytest.raises(ValueError):
        kronecker_minus4(0)


def test_closed_form_examples():
    assert r2_closed(25) == 12
    assert r4_closed(2) == 24
    assert r8_closed(3) == 448
    assert t2_closed(0) == 1
    assert t2_closed(3) == 2
    assert t6_closed(2) == 15


def test_closed_forms_match_oracles():
    r2, r4, r8 = r_oracle(2, 200), r_oracle(4, 200), r_oracle(8, 200)
    t2, t4, t6 = t_oracle(2, 200), t_oracle(4, 200), t_oracle(6, 200)
    for n in range(1, 201):
        assert r2_closed(n) == r2[n]
        assert r4_closed(n) == r4[n]
        assert r8_closed(n) == r8[n]
    for n in range(0, 201):
        assert t2_closed(n) == t2[n]
        assert t4_closed(n) == t4[n]
        assert t6_closed(n) == t6[n]


def test_t6_closed_at_primes_4n_plus_3():
    # When 4n + 3 is prime the value collapses to (n + 1)(2n + 1).
    for n in range(0, 100):
        if is_prime(4 * n + 3):
            assert t6_closed(n) == (n + 1) * (2 * n + 1)


def test_convolution_identity_small_cases():
    report = verify_convolution(2)
    assert report.passed
    # n = 1 is the empty sum; n = 2 needs the factor 8 on the convolution side.
    assert report.inputs_checked == [1, 2]


def test_convolution_identity_range():
    assert verify_convolution(300).passed


def squares_weight(m):
    return sigma_star(m) - 4 * sigma_star_scaled(m, 2)


def test_prime_r2_examples():
    for p, expected in ((5, 4), (3, -4), (13, 12)):
        report = verify_prime_r2(p)
        assert report.passed, report.failures
        # Recompute the sum directly to pin the value, not just the pass flag.
        r2 = r_oracle(2, p).values
        total = sum(r2[j] * squares_weight(p - j) for j in range(1, p))
        assert total == expected


def test_prime_r2_rejects_bad_input():
    with pytest.raises(NotPrime):
        verify_prime_r2(9)
    with pytest.raises(PreconditionNotMet):
        verify_prime_r2(2)


def test_prime_r2_range_covers_twins():
    report = verify_prime_r2_range(100)
    assert report.passed
    assert 3 in report.inputs_checked and 97 in report.inputs_checked


def test_prime_r4_r8_example():
    report = verify_prime_r4_r8(3)
    assert report.passed
    r4 = r_oracle(4, 2).values
    r8 = r_oracle(8, 2).values
    assert sum(r4[j] * squares_weight(3 - j) for j in range(1, 3)) == 8
    assert sum(r8[j] * squares_weight(3 - j) for j in range(1, 3)) == 80


def test_t_verifier_examples():
    assert verify_t2_prime(3).passed
    assert verify_t4(3).passed
    assert verify_t6(2).passed


def test_t_verifiers_enforce_preconditions():
    with pytest.raises(NotPrime):
        verify_t2_prime(4)
    with pytest.raises(PreconditionNotMet):
        verify_t2_prime(2)  # 4p + 1 = 9
    with pytest.raises(PreconditionNotMet):
        verify_t4(4)  # 2n + 1 = 9
    with pytest.raises(PreconditionNotMet):
        verify_t6(3)  # 4n + 3 = 15


def test_R_combination_values():
    assert R_combination(1) == 4
    assert R_combination(2) == 8
    assert R_combination(8) == 24


def test_R_combination_positive_midrange():
    for n in range(1, 2001):
        assert R_combination(n) > 0


def test_R_case_identity_for_multiples_of_eight():
    for k in range(1, 501):
        assert R_combination(8 * k) == (
            4 * sigma_odd(8 * k) + 4 * sigma_odd(4 * k) + 16 * sigma_odd(2 * k)
        )


def test_R_positive_range_verifier():
    report = verify_R_positive(5000)
    assert report.passed
    assert len(report.inputs_checked) == 5000


def test_series1_weight_identity():
    # The expansion weight of the series-1 product equals R_combination.
    for n in range(1, 1001):
        lhs = (
            4 * sigma(n)
            - 2 * sigma_class(n, 0, 2)
            + 2 * sigma_class(n, 0, 4)
            - 4 * sigma_class(n, 0, 8)
        )
        assert lhs == R_combination(n)


def test_master_family_spec_examples():
    single = master_family_spec(MasterFamilyParams(1, 3, frozenset({0}), "single-base"))
    assert single.to_text() == "1n^-1,3n^1"
    double = master_family_spec(MasterFamilyParams(1, 3, frozenset({0, 1}), "double-product"))
    assert double.to_text() == "1n^-2,3n^1,3n-1^1"
    for reading in ("double-product", "single-base"):
        spec = master_family_spec(MasterFamilyParams(2, 2, frozenset({0}), reading))
        assert spec.to_text() == "1n^-2,2n^2"


def test_master_family_params_validation():
    with pytest.raises(ValueError):
        MasterFamilyParams(0, 3, frozenset({0}), "single-base")
    with pytest.raises(ValueError):
        MasterFamilyParams(1, 3, frozenset(), "single-base")
    with pytest.raises(ValueError):
        MasterFamilyParams(1, 3, frozenset({2}), "single-base")
    with pytest.raises(ValueError):
        MasterFamilyParams(1, 3, frozenset({0}), "sideways")


def test_master_positivity_case_count():
    # Nonempty offset subsets: 1 + 3 + 7 + 15 per a value, two readings each.
    assert len(master_positivity_cases()) == 3 * 26 * 2


def test_master_positivity_sweep_small_order():
    report = verify_master_positivity(order=60)
    assert report.passed
    assert len(report.inputs_checked) == 156


def test_intro_families_positive():
    for a in (1, 2, 3):
        for offsets in ({0}, {1}, {0, 1}):
            params = MasterFamilyParams(a, 3, frozenset(offsets), "single-base")
            assert verify_positivity(master_family_spec(params), 120).passed


def test_master_weight_lower_bound():
    # The expansion weight of a double-product member dominates
    # a * sigma_{1,b}(n) >= a, which drives the positivity induction.
    divisor_lists = {n: divisors(n) for n in range(1, 1001)}
    for params in master_positivity_cases(a_values=(1, 3), b_values=(2, 4, 5)):
        if params.reading != "double-product":
            continue
        a, b, offsets = params.a, params.b, params.offsets
        for n in range(1, 1001, 7):
            divs = divisor_lists[n]
            total = sum(divs)
            class_sums = [
                sum(d for d in divs if d % b == (b - i) % b) for i in offsets
            ]
            ones = sum(d for d in divs if d % b == 1 % b)
            lhs = a * len(offsets) * total - a * sum(class_sums)
            assert lhs >= a * ones >= a > 0


def test_positivity_negative_control():
    report = verify_positivity(ProductSpec.parse("1n^1"), 1)
    assert not report.passed
    assert report.failures[0].input == 1
    assert report.failures[0].lhs == "-1"


def test_series1_positivity():
    assert verify_series1_positivity(0).passed
    report = verify_series1_positivity(300)
    assert report.passed
    assert expand(SERIES1_SPEC, 0)[0] == 1


def test_oracle_equivalence_verifier():
    report = verify_oracle_equivalence(count=30, order=80, seed=3)
    assert report.passed
    assert len(report.inputs_checked) == 30


def test_oracle_equivalence_parallel_matches_sequential():
    sequential = verify_oracle_equivalence(count=12, order=50, seed=9, workers=1)
    threaded = verify_oracle_equivalence(count=12, order=50, seed=9, workers=4)
    assert sequential.to_json_dict() == threaded.to_json_dict()


def test_report_json_schema():
    report = VerificationReport("demo")
    report.mark(1)
    report.expect(1, 2, 3)
    data = report.to_json_dict()
    assert data == {
        "identity": "demo",
        "checked": 1,
        "failures": [{"input": 1, "lhs": "2", "rhs": "3"}],
        "passed": False,
    }
    json.dumps(data)  # must be serializable as-is
