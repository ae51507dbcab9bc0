"""Closed-form count evaluators, identity verifiers, and positivity checkers.

The verifiers recompute both sides of each identity from independent
ingredients: count values come from the convolution-power oracles and
divisor sums from trial division, never from the recursion under test.
Failures are collected in reports rather than raised, so a full range can
be surveyed in one pass.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .counts import r_oracle, t_oracle
from .divisor_sums import (
    divisors,
    sigma,
    sigma_scaled,
    sigma_star,
    sigma_star_scaled,
    sigma_table,
)
from .errors import DivisibilityViolation, NotPrime, PreconditionNotMet, checked_div
from .series import (
    Factor,
    FactorSet,
    ProductSpec,
    expand,
    oracle_expand,
    random_spec_corpus,
)


@dataclass(frozen=True)
class Failure:
    input: int
    lhs: str
    rhs: str


@dataclass
class VerificationReport:
    """Per-input pass/fail record for one identity over a range of inputs."""

    identity: str
    inputs_checked: list[int] = field(default_factory=list)
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def mark(self, value: int) -> None:
        self.inputs_checked.append(value)

    def expect(self, value: int, lhs, rhs) -> None:
        if lhs != rhs:
            self.failures.append(Failure(value, str(lhs), str(rhs)))

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "checked": len(self.inputs_checked),
            "failures": [
                {"input": f.input, "lhs": f.lhs, "rhs": f.rhs} for f in self.failures
            ],
            "passed": self.passed,
        }


# --- primality (deterministic, desk scale) ---


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_below(limit: int) -> list[int]:
    """All primes < limit, by sieve."""
    if limit <= 2:
        return []
    flags = bytearray([1]) * limit
    flags[0] = flags[1] = 0
    p = 2
    while p * p < limit:
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit, p)))
        p += 1
    return [n for n in range(limit) if flags[n]]


def _require_prime(p: int, role: str = "p") -> None:
    if not is_prime(p):
        raise NotPrime(f"{role} = {p} is not prime")


def _require_odd_prime(p: int) -> None:
    _require_prime(p)
    if p == 2:
        raise PreconditionNotMet("p must be an odd prime, got 2")


# --- closed forms ---


def kronecker_minus4(d: int) -> int:
    """1 for d = 1 mod 4, -1 for d = 3 mod 4, 0 for even d."""
    if d < 1:
        raise ValueError(f"kronecker_minus4 requires d >= 1, got {d}")
    r = d % 4
    if r == 1:
        return 1
    if r == 3:
        return -1
    return 0


def r2_closed(n: int) -> int:
    """r_2(n) = 4 * sum of kronecker_minus4 over the divisors of n."""
    if n < 1:
        raise ValueError(f"r2_closed requires n >= 1, got {n}")
    return 4 * sum(kronecker_minus4(d) for d in divisors(n))


def r4_closed(n: int) -> int:
    """r_4(n) = 8 sigma(n) - 32 sigma(n/4)."""
    if n < 1:
        raise ValueError(f"r4_closed requires n >= 1, got {n}")
    return 8 * sigma(n) - 32 * sigma_scaled(n, 4)


def r8_closed(n: int) -> int:
    """r_8(n) = 16 (-1)^n * sum over divisors d of n of (-1)^d d^3."""
    if n < 1:
        raise ValueError(f"r8_closed requires n >= 1, got {n}")
    alternating = sum(d ** 3 if d % 2 == 0 else -(d ** 3) for d in divisors(n))
    return 16 * alternating if n % 2 == 0 else -16 * alternating


def t2_closed(n: int) -> int:
    """t_2(n) = sum of kronecker_minus4 over the divisors of 4n + 1."""
    if n < 0:
        raise ValueError(f"t2_closed requires n >= 0, got {n}")
    return sum(kronecker_minus4(d) for d in divisors(4 * n + 1))


def t4_closed(n: int) -> int:
    """t_4(n) = sigma(2n + 1)."""
    if n < 0:
        raise ValueError(f"t4_closed requires n >= 0, got {n}")
    return sigma(2 * n + 1)


def t6_closed(n: int) -> int:
    """t_6(n) = -(1/8) * sum over divisors d of 4n + 3 of kronecker_minus4(d) d^2.

    The division by 8 is checked-exact; divisors of 4n + 3 are odd and pair
    off with opposite characters, so the sum is always divisible.
    """
    if n < 0:
        raise ValueError(f"t6_closed requires n >= 0, got {n}")
    total = sum(kronecker_minus4(d) * d * d for d in divisors(4 * n + 3))
    return checked_div(-total, 8)


# --- verifier ingredients ---


def _squares_weights(limit: int) -> list[int]:
    return [0] + [sigma_star(m) - 4 * sigma_star_scaled(m, 2) for m in range(1, limit + 1)]


def _triangular_weights(limit: int) -> list[int]:
    return [0] + [sigma(m) - 4 * sigma_scaled(m, 2) for m in range(1, limit + 1)]


def _conv_sum(values, weights, n: int, start: int = 1) -> int:
    return sum(values[j] * weights[n - j] for j in range(start, n))


# --- convolution identity ---


def verify_convolution(max_n: int) -> VerificationReport:
    """Convolution of sigma(j)-4 sigma(j/4) against sigma*(j)-4 sigma*(j/2).

    For each n checks
        8 * sum_{j=1}^{n-1} (sigma(j) - 4 sigma(j/4)) (sigma*(n-j) - 4 sigma*((n-j)/2))
          = n (sigma(n) - 4 sigma(n/4)) - (sigma*(n) - 4 sigma*(n/2)).
    The factor 8 normalizes the four-squares count r_4 = 8 (sigma - 4 sigma(./4));
    the same equality, read coefficientwise, certifies the product of the two
    generating series.
    """
    if max_n < 1:
        raise ValueError(f"verify_convolution requires max_n >= 1, got {max_n}")
    report = VerificationReport("convolution")
    h4 = [0] + [sigma(m) - 4 * sigma_scaled(m, 4) for m in range(1, max_n + 1)]
    g = _squares_weights(max_n)
    for n in range(1, max_n + 1):
        report.mark(n)
        lhs = 8 * _conv_sum(h4, g, n)
        report.expect(n, lhs, n * h4[n] - g[n])
    return report


# --- prime sums against r_2, r_4, r_8 ---


def _check_prime_r2(report, p, r2, g):
    s = _conv_sum(r2, g, p)
    report.expect(p, s, p - 1 if p % 4 == 1 else -p - 1)


def _check_twin_r2(report, p, r2, g):
    # Twin corollary: the sum at p + 2 is -4 - (sum at p) when p = 1 mod 4,
    # and -(sum at p) when p = 3 mod 4.
    s_p = _conv_sum(r2, g, p)
    s_next = _conv_sum(r2, g, p + 2)
    expected = -4 - s_p if p % 4 == 1 else -s_p
    report.expect(p, s_next, expected)


def verify_prime_r2(p: int) -> VerificationReport:
    """Sum of r_2(j) (sigma*(p-j) - 4 sigma*((p-j)/2)) equals p-1 or -p-1.

    The sign case follows p mod 4.  When p + 2 is also prime the twin-pair
    corollary is checked as well.
    """
    _require_odd_prime(p)
    report = VerificationReport("prime-r2")
    r2 = r_oracle(2, p + 1).values
    g = _squares_weights(p + 1)
    report.mark(p)
    _check_prime_r2(report, p, r2, g)
    if is_prime(p + 2):
        _check_twin_r2(report, p, r2, g)
    return report


def verify_prime_r2_range(limit: int) -> VerificationReport:
    """verify_prime_r2 over all odd primes < limit, twins included."""
    report = VerificationReport("prime-r2")
    r2 = r_oracle(2, limit).values
    g = _squares_weights(limit)
    primes = primes_below(limit)
    prime_set = set(primes)
    for p in primes:
        if p == 2:
            continue
        report.mark(p)
        _check_prime_r2(report, p, r2, g)
        if p + 2 in prime_set:
            _check_twin_r2(report, p, r2, g)
    return report


def _check_prime_r4_r8(report, p, r2, r4, r8, g):
    s2 = _conv_sum(r2, g, p)
    s4 = _conv_sum(r4, g, p)
    s8 = _conv_sum(r8, g, p)
    report.expect(p, s4, p * p - 1)
    report.expect(p, s8, p ** 4 - 1)
    # Squares-of-sums corollary ties the three prime sums together.
    report.expect(p, (1 + s2) ** 2, 1 + s4)
    report.expect(p, (1 + s4) ** 2, 1 + s8)


def verify_prime_r4_r8(p: int) -> VerificationReport:
    """The r_4 prime sum equals p^2 - 1 and the r_8 sum equals p^4 - 1.

    Also checks the squared-sum corollary (1 + S_2)^2 = 1 + S_4 and
    (1 + S_4)^2 = 1 + S_8.  p must be an odd prime; 2 is rejected because
    the statement is made for odd primes only.
    """
    _require_odd_prime(p)
    report = VerificationReport("prime-r4r8")
    r2 = r_oracle(2, p - 1).values
    r4 = r_oracle(4, p - 1).values
    r8 = r_oracle(8, p - 1).values
    g = _squares_weights(p - 1)
    report.mark(p)
    _check_prime_r4_r8(report, p, r2, r4, r8, g)
    return report


def verify_prime_r4_r8_range(limit: int) -> VerificationReport:
    """verify_prime_r4_r8 over all odd primes < limit."""
    report = VerificationReport("prime-r4r8")
    r2 = r_oracle(2, limit).values
    r4 = r_oracle(4, limit).values
    r8 = r_oracle(8, limit).values
    g = _squares_weights(limit)
    for p in primes_below(limit):
        if p == 2:
            continue
        report.mark(p)
        _check_prime_r4_r8(report, p, r2, r4, r8, g)
    return report


# --- prime sums against t_2, t_4, t_6 ---


def verify_t2_prime(p: int) -> VerificationReport:
    """Sum of t_2(j) (sigma(p-j) - 4 sigma((p-j)/2)) equals -1.

    Requires both p and 4p + 1 prime.
    """
    _require_prime(p)
    if not is_prime(4 * p + 1):
        raise PreconditionNotMet(f"4p + 1 = {4 * p + 1} is not prime")
    report = VerificationReport("t2-prime")
    t2 = t_oracle(2, p - 1).values  # p >= 3 here: p = 2 fails the 4p+1 test
    h = _triangular_weights(p - 1)
    report.mark(p)
    report.expect(p, _conv_sum(t2, h, p), -1)
    return report


def verify_t2_prime_range(limit: int) -> VerificationReport:
    """verify_t2_prime over all p < limit with p and 4p + 1 prime."""
    report = VerificationReport("t2-prime")
    t2 = t_oracle(2, limit).values
    h = _triangular_weights(limit)
    for p in primes_below(limit):
        if not is_prime(4 * p + 1):
            continue
        report.mark(p)
        report.expect(p, _conv_sum(t2, h, p), -1)
    return report


def verify_t4(n: int) -> VerificationReport:
    """Sum from j=0 of t_4(j) (sigma(n-j) - 4 sigma((n-j)/2)) equals n(n+1)/2.

    Requires 2n + 1 prime.
    """
    if not is_prime(2 * n + 1):
        raise PreconditionNotMet(f"2n + 1 = {2 * n + 1} is not prime")
    report = VerificationReport("t4-prime")
    t4 = t_oracle(4, n - 1).values  # n >= 1 here: 2*0 + 1 is not prime
    h = _triangular_weights(n)
    report.mark(n)
    report.expect(n, _conv_sum(t4, h, n, start=0), n * (n + 1) // 2)
    return report


def verify_t4_range(limit: int) -> VerificationReport:
    """verify_t4 over all n < limit with 2n + 1 prime."""
    report = VerificationReport("t4-prime")
    t4 = t_oracle(4, limit).values
    h = _triangular_weights(limit)
    for n in range(1, limit):
        if not is_prime(2 * n + 1):
            continue
        report.mark(n)
        report.expect(n, _conv_sum(t4, h, n, start=0), n * (n + 1) // 2)
    return report


def verify_t6(n: int) -> VerificationReport:
    """Sum from j=0 of t_6(j) (sigma(n-j) - 4 sigma((n-j)/2)) equals n(n+1)(2n+1)/6.

    Requires 4n + 3 prime.
    """
    if not is_prime(4 * n + 3):
        raise PreconditionNotMet(f"4n + 3 = {4 * n + 3} is not prime")
    report = VerificationReport("t6-prime")
    # n = 0 is valid (4n + 3 = 3 is prime) and checks the empty sum.
    t6 = t_oracle(6, n - 1).values if n >= 1 else (1,)
    h = _triangular_weights(n)
    report.mark(n)
    report.expect(n, _conv_sum(t6, h, n, start=0), n * (n + 1) * (2 * n + 1) // 6)
    return report


def verify_t6_range(limit: int) -> VerificationReport:
    """verify_t6 over all n < limit with 4n + 3 prime."""
    report = VerificationReport("t6-prime")
    t6 = t_oracle(6, limit).values
    h = _triangular_weights(limit)
    for n in range(limit):  # n = 0 qualifies: 4n + 3 = 3 is prime
        if not is_prime(4 * n + 3):
            continue
        report.mark(n)
        report.expect(n, _conv_sum(t6, h, n, start=0), n * (n + 1) * (2 * n + 1) // 6)
    return report


# --- positivity ---


def R_combination(n: int) -> int:
    """4 sigma(n) - 4 sigma(n/2) + 8 sigma(n/4) - 32 sigma(n/8), always positive."""
    if n < 1:
        raise ValueError(f"R_combination requires n >= 1, got {n}")
    return (
        4 * sigma(n)
        - 4 * sigma_scaled(n, 2)
        + 8 * sigma_scaled(n, 4)
        - 32 * sigma_scaled(n, 8)
    )


def verify_R_positive(limit: int) -> VerificationReport:
    """R_combination(n) > 0 for all n in [1, limit], via a sigma sieve."""
    if limit < 1:
        raise ValueError(f"verify_R_positive requires limit >= 1, got {limit}")
    report = VerificationReport("R-positive")
    table = sigma_table(limit)
    report.inputs_checked.extend(range(1, limit + 1))
    for n in range(1, limit + 1):
        value = 4 * table[n]
        if n % 2 == 0:
            value -= 4 * table[n // 2]
        if n % 4 == 0:
            value += 8 * table[n // 4]
        if n % 8 == 0:
            value -= 32 * table[n // 8]
        if value <= 0:
            report.failures.append(Failure(n, str(value), ">0"))
    return report


@dataclass(frozen=True)
class MasterFamilyParams:
    """Parameters of the positivity family: base exponent a, progression
    modulus b, offsets I within [0, b-2], and which reading of the double
    product to take.

    reading="double-product" repeats the base factor (1-x^n)^-a once per
    offset; reading="single-base" uses a single base factor.
    """

    a: int
    b: int
    offsets: frozenset[int]
    reading: str

    def __post_init__(self):
        object.__setattr__(self, "offsets", frozenset(self.offsets))
        if self.a < 1:
            raise ValueError(f"a must be >= 1, got {self.a}")
        if self.b < 2:
            raise ValueError(f"b must be >= 2, got {self.b}")
        if not self.offsets:
            raise ValueError("offsets must be nonempty")
        if any(not 0 <= i <= self.b - 2 for i in self.offsets):
            raise ValueError(f"offsets must lie in [0, b-2], got {sorted(self.offsets)}")
        if self.reading not in ("double-product", "single-base"):
            raise ValueError(f"unknown reading {self.reading!r}")

    def describe(self) -> str:
        i_text = "{" + ",".join(str(i) for i in sorted(self.offsets)) + "}"
        return f"a={self.a},b={self.b},I={i_text},{self.reading}"


def master_family_spec(params: MasterFamilyParams) -> ProductSpec:
    """Build the product spec for one member of the positivity family."""
    base_multiplicity = len(params.offsets) if params.reading == "double-product" else 1
    factors = [Factor(FactorSet(1, 0), -params.a * base_multiplicity)]
    for i in sorted(params.offsets):
        factors.append(Factor(FactorSet(params.b, i), params.a))
    return ProductSpec(factors)


def verify_positivity(
    spec: ProductSpec, order: int, identity: str = "positivity", context: str = ""
) -> VerificationReport:
    """Expand the spec and record every index with coefficient <= 0."""
    report = VerificationReport(identity)
    series = expand(spec, order)
    report.inputs_checked.extend(range(order + 1))
    suffix = f" [{context}]" if context else ""
    for n, value in enumerate(series):
        if value <= 0:
            report.failures.append(Failure(n, str(value), ">0" + suffix))
    return report


SERIES1_SPEC = ProductSpec.parse("1n^-4,2n^2,4n^-2,8n^4")


def verify_series1_positivity(order: int) -> VerificationReport:
    """All coefficients of (1-x^n)^-4 (1-x^2n)^2 (1-x^4n)^-2 (1-x^8n)^4 are positive."""
    return verify_positivity(SERIES1_SPEC, order, "series1-positivity")


def master_positivity_cases(
    a_values=(1, 2, 3), b_values=(2, 3, 4, 5)
) -> list[MasterFamilyParams]:
    """Every (a, b, offsets, reading) combination over the given grids."""
    cases = []
    for a in a_values:
        for b in b_values:
            candidates = range(b - 1)
            for size in range(1, b):
                for offsets in combinations(candidates, size):
                    for reading in ("double-product", "single-base"):
                        cases.append(MasterFamilyParams(a, b, frozenset(offsets), reading))
    return cases


def _map_ordered(fn, items, workers: int):
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def verify_master_positivity(
    order: int = 300,
    a_values=(1, 2, 3),
    b_values=(2, 3, 4, 5),
    workers: int = 1,
) -> VerificationReport:
    """Positivity of the whole family over the parameter grid, both readings.

    Failures carry the coefficient index as input and the offending
    parameter combination in the expected-value text.
    """
    report = VerificationReport("master-positivity")
    cases = master_positivity_cases(a_values, b_values)
    results = _map_ordered(
        lambda params: verify_positivity(
            master_family_spec(params), order, "master-positivity", params.describe()
        ),
        cases,
        workers,
    )
    for index, sub in enumerate(results):
        report.mark(index)
        report.failures.extend(sub.failures)
    return report


# --- expansion oracle equivalence ---


def verify_oracle_equivalence(
    count: int = 100, order: int = 120, seed: int = 0, workers: int = 1
) -> VerificationReport:
    """expand and oracle_expand agree on a reproducible random spec corpus.

    Also certifies that the checked division in expand never fires: a
    DivisibilityViolation is recorded as a failure for that spec index.
    """
    report = VerificationReport("oracle-equivalence")
    specs = random_spec_corpus(count, seed)

    def run(spec):
        try:
            return expand(spec, order), oracle_expand(spec, order)
        except DivisibilityViolation as exc:
            return exc, None

    results = _map_ordered(run, specs, workers)
    for index, (spec, (left, right)) in enumerate(zip(specs, results)):
        report.mark(index)
        if right is None:
            report.failures.append(
                Failure(index, f"DivisibilityViolation: {left}", f"exact division [{spec!r}]")
            )
            continue
        if left != right:
            n = next(i for i in range(order + 1) if left[i] != right[i])
            report.failures.append(
                Failure(index, str(left[n]), f"{right[n]} [{spec!r}, n={n}]")
            )
    return report
