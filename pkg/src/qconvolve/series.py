"""Truncated exact power series and expansion of progression products.

A product spec denotes a finite product of factors (1 - x^d)^c, d ranging
over an arithmetic progression {m*n - i : n >= 1}.  The expansion engine
turns the logarithmic derivative of the product into a coefficient
recursion: n * p(n) is a convolution of earlier coefficients against
weighted divisor sums, and the division by n is performed checked-exact.
An independent oracle expands the same product by plain polynomial
multiplication and division.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from random import Random

from .divisor_sums import divisors
from .errors import ParseError, checked_div


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients 0..N of a formal power series, exact integers."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a power series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "PowerSeries":
        if order < 0 or order > self.order:
            raise ValueError(f"cannot truncate order-{self.order} series to {order}")
        return PowerSeries(self.coeffs[: order + 1])


@dataclass(frozen=True)
class FactorSet:
    """Arithmetic-progression index set {modulus*n - offset : n >= 1}."""

    modulus: int
    offset: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.offset < self.modulus:
            raise ValueError(
                f"offset must lie in [0, modulus), got offset={self.offset},"
                f" modulus={self.modulus}"
            )

    @classmethod
    def from_residue(cls, residue: int, modulus: int) -> "FactorSet":
        """The set of all positive integers congruent to residue mod modulus."""
        if modulus < 1 or not 0 <= residue < modulus:
            raise ValueError(f"need 0 <= residue < modulus, got {residue} mod {modulus}")
        return cls(modulus, (-residue) % modulus)

    @property
    def least(self) -> int:
        """Smallest member, modulus - offset."""
        return self.modulus - self.offset

    def __contains__(self, d: int) -> bool:
        # For positive d the residue condition already forces d >= least.
        return d >= 1 and d % self.modulus == (-self.offset) % self.modulus

    def elements(self, bound: int) -> range:
        """Members up to bound, ascending."""
        return range(self.least, bound + 1, self.modulus)


@dataclass(frozen=True)
class Factor:
    """One factor prod_{d in index_set} (1 - x^d)^exponent."""

    index_set: FactorSet
    exponent: int

    def __post_init__(self):
        if self.exponent == 0:
            raise ValueError("factor exponent must be nonzero")


_FACTOR_RE = re.compile(r"(\d+)(?:n(?:-(\d+))?)?\^([+-]?\d+)\Z")


class ProductSpec:
    """A finite product of progression factors.

    Duplicate (modulus, offset) pairs merge by adding exponents; factors
    whose merged exponent is zero are dropped, so fully cancelling input
    leaves the constant product 1.
    """

    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a product spec needs at least one factor")
        exponents: dict[tuple[int, int], int] = {}
        order: list[tuple[int, int]] = []
        for f in factors:
            key = (f.index_set.modulus, f.index_set.offset)
            if key not in exponents:
                exponents[key] = 0
                order.append(key)
            exponents[key] += f.exponent
        self.factors = tuple(
            Factor(FactorSet(m, i), exponents[(m, i)])
            for (m, i) in order
            if exponents[(m, i)] != 0
        )

    @classmethod
    def parse(cls, text: str) -> "ProductSpec":
        """Parse 'm[n[-i]]^c' factors joined by commas, e.g. '2n^1,2n-1^-2'."""
        compact = "".join(text.split())
        if not compact:
            raise ParseError("empty product spec")
        factors = []
        for part in compact.split(","):
            match = _FACTOR_RE.match(part)
            if match is None:
                raise ParseError(f"bad factor {part!r}: expected m[n[-i]]^c")
            m = int(match.group(1))
            i = int(match.group(2) or 0)
            c = int(match.group(3))
            if m < 1:
                raise ParseError(f"bad factor {part!r}: modulus must be >= 1")
            if i >= m:
                raise ParseError(f"bad factor {part!r}: offset must be below the modulus")
            if c == 0:
                raise ParseError(f"bad factor {part!r}: exponent must be nonzero")
            factors.append(Factor(FactorSet(m, i), c))
        return cls(factors)

    @classmethod
    def from_json_dict(cls, data: dict) -> "ProductSpec":
        try:
            factors = [
                Factor(FactorSet(int(f["m"]), int(f["i"])), int(f["c"]))
                for f in data["factors"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad product-spec JSON: {exc}") from exc
        return cls(factors)

    def to_json_dict(self) -> dict:
        return {
            "factors": [
                {"m": f.index_set.modulus, "i": f.index_set.offset, "c": f.exponent}
                for f in self.factors
            ]
        }

    def to_text(self) -> str:
        parts = []
        for f in self.factors:
            m, i = f.index_set.modulus, f.index_set.offset
            stem = f"{m}n" if i == 0 else f"{m}n-{i}"
            parts.append(f"{stem}^{f.exponent}")
        return ",".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProductSpec):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"ProductSpec({self.to_text()!r})"


def weighted_divisor_sum(k: int, spec: ProductSpec) -> int:
    """Sum over factors of -c times the divisors of k lying in the factor's set.

    This is the convolution weight of the expansion recursion at index k.
    """
    if k < 1:
        raise ValueError(f"weighted_divisor_sum requires k >= 1, got {k}")
    divs = divisors(k)
    total = 0
    for f in spec.factors:
        index_set = f.index_set
        in_set = sum(d for d in divs if d in index_set)
        total -= f.exponent * in_set
    return total


def _weight_table(spec: ProductSpec, limit: int) -> list[int]:
    """weighted_divisor_sum(k, spec) for k = 0..limit, by sieving multiples."""
    table = [0] * (limit + 1)
    for f in spec.factors:
        c = f.exponent
        for element in f.index_set.elements(limit):
            weight = -c * element
            for multiple in range(element, limit + 1, element):
                table[multiple] += weight
    return table


def expand(spec: ProductSpec, order: int) -> PowerSeries:
    """Expand the product to the given truncation order.

    Coefficient 0 is 1; coefficient n is the convolution of the earlier
    coefficients against the weight table, divided exactly by n.  A failed
    division raises DivisibilityViolation (an internal bug signal: integer
    exponents always divide exactly).
    """
    if order < 0:
        raise ValueError(f"expand requires order >= 0, got {order}")
    weights = _weight_table(spec, order)
    nonzero = [(k, w) for k, w in enumerate(weights) if k and w]
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for n in range(1, order + 1):
        acc = 0
        for k, w in nonzero:
            if k > n:
                break
            acc += coeffs[n - k] * w
        coeffs[n] = checked_div(acc, n)
    return PowerSeries(tuple(coeffs))


def oracle_expand(spec: ProductSpec, order: int) -> PowerSeries:
    """Expand by plain truncated polynomial arithmetic, factor by factor.

    Each progression element e <= order contributes |c| passes of
    multiplication by (1 - x^e) or, for negative exponents, division via the
    geometric series.  Independent of the recursion in expand.
    """
    if order < 0:
        raise ValueError(f"oracle_expand requires order >= 0, got {order}")
    out = [0] * (order + 1)
    out[0] = 1
    for f in spec.factors:
        c = f.exponent
        for e in f.index_set.elements(order):
            if c > 0:
                for _ in range(c):
                    for idx in range(order, e - 1, -1):
                        out[idx] -= out[idx - e]
            else:
                for _ in range(-c):
                    for idx in range(e, order + 1):
                        out[idx] += out[idx - e]
    return PowerSeries(tuple(out))


def multiply(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller order."""
    order = min(a.order, b.order)
    # Iterate the operand with fewer nonzero terms on the outside.
    first, second = a.coeffs, b.coeffs
    if sum(1 for v in first if v) > sum(1 for v in second if v):
        first, second = second, first
    out = [0] * (order + 1)
    for j, fj in enumerate(first[: order + 1]):
        if not fj:
            continue
        for i in range(order - j + 1):
            si = second[i]
            if si:
                out[i + j] += fj * si
    return PowerSeries(tuple(out))


def random_product_spec(
    rng: Random,
    max_modulus: int = 8,
    max_exponent: int = 5,
    max_factors: int = 4,
) -> ProductSpec:
    """Draw a spec with 1..max_factors factors, small moduli and exponents."""
    exponent_choices = [c for c in range(-max_exponent, max_exponent + 1) if c]
    factors = []
    for _ in range(rng.randint(1, max_factors)):
        m = rng.randint(1, max_modulus)
        i = rng.randint(0, m - 1)
        c = rng.choice(exponent_choices)
        factors.append(Factor(FactorSet(m, i), c))
    return ProductSpec(factors)


def random_spec_corpus(count: int, seed: int = 0, **kwargs) -> list[ProductSpec]:
    """A reproducible corpus of random specs for oracle cross-checks."""
    rng = Random(seed)
    return [random_product_spec(rng, **kwargs) for _ in range(count)]
