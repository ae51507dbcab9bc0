"""Representation-count tables for squares, triangular numbers, and mixed sums.

r_k(n) counts ordered integer k-tuples of squares summing to n, t_k(n)
ordered k-tuples of triangular numbers, and u_{k,l}(n) mixed sums of k
squares plus l triangular numbers.  Each table is computed two independent
ways: a divisor-sum recursion (n times the count is a convolution against a
fixed divisor-sum combination) and a convolution-power oracle built from the
k = 1 indicator tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .divisor_sums import sigma, sigma_scaled, sigma_star, sigma_star_scaled
from .errors import checked_div


@dataclass(frozen=True)
class CountTable:
    """Values g(0..N) of one representation-count function."""

    kind: str  # "squares" | "triangular" | "mixed"
    k: int
    l: int | None
    values: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


def squares_weight(m: int) -> int:
    """sigma_star(m) - 4 sigma_star(m/2), the r_k recursion weight."""
    return sigma_star(m) - 4 * sigma_star_scaled(m, 2)


def triangular_weight(m: int) -> int:
    """sigma(m) - 4 sigma(m/2), the t_k recursion weight."""
    return sigma(m) - 4 * sigma_scaled(m, 2)


def mixed_weight(m: int, k: int, l: int) -> int:
    """(2k+l) sigma(m) - 2(5k+2l) sigma(m/2) + 8k sigma(m/4)."""
    return (
        (2 * k + l) * sigma(m)
        - 2 * (5 * k + 2 * l) * sigma_scaled(m, 2)
        + 8 * k * sigma_scaled(m, 4)
    )


def _weighted_recursion(order: int, weights: list[int], multiplier: int) -> tuple[int, ...]:
    # n * g(n) = multiplier * sum_{j=0}^{n-1} g(j) * weights[n-j], g(0) = 1.
    values = [0] * (order + 1)
    values[0] = 1
    for n in range(1, order + 1):
        acc = 0
        for j in range(n):
            w = weights[n - j]
            if w:
                acc += values[j] * w
        values[n] = checked_div(multiplier * acc, n)
    return tuple(values)


def r_table(k: int, order: int) -> CountTable:
    """Counts of n as an ordered sum of k integer squares, n = 0..order."""
    if k < 1:
        raise ValueError(f"r_table requires k >= 1, got {k}")
    weights = [0] + [squares_weight(m) for m in range(1, order + 1)]
    return CountTable("squares", k, None, _weighted_recursion(order, weights, 2 * k))


def t_table(k: int, order: int) -> CountTable:
    """Counts of n as an ordered sum of k triangular numbers."""
    if k < 1:
        raise ValueError(f"t_table requires k >= 1, got {k}")
    weights = [0] + [triangular_weight(m) for m in range(1, order + 1)]
    return CountTable("triangular", k, None, _weighted_recursion(order, weights, k))


def u_table(k: int, l: int, order: int) -> CountTable:
    """Counts of n as k squares plus l triangular numbers, both ordered."""
    if k < 1 or l < 1:
        raise ValueError(f"u_table requires k, l >= 1, got k={k}, l={l}")
    weights = [0] + [mixed_weight(m, k, l) for m in range(1, order + 1)]
    return CountTable("mixed", k, l, _weighted_recursion(order, weights, 1))


def square_base(order: int) -> list[int]:
    """r_1: 1 at 0, 2 at each positive perfect square."""
    base = [0] * (order + 1)
    base[0] = 1
    for a in range(1, isqrt(order) + 1):
        base[a * a] = 2
    return base


def triangular_base(order: int) -> list[int]:
    """t_1: indicator of the triangular numbers y(y+1)/2."""
    base = [0] * (order + 1)
    y = 0
    while y * (y + 1) // 2 <= order:
        base[y * (y + 1) // 2] = 1
        y += 1
    return base


def _convolve(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for j, bj in enumerate(b[: order + 1]):
        if not bj:
            continue
        for i in range(order - j + 1):
            ai = a[i]
            if ai:
                out[i + j] += ai * bj
    return out


def _convolution_power(base: list[int], k: int, order: int) -> list[int]:
    out = [1] + [0] * order
    for _ in range(k):
        out = _convolve(out, base, order)
    return out


def r_oracle(k: int, order: int) -> CountTable:
    """r_table oracle: k-th convolution power of the square indicator."""
    if k < 1:
        raise ValueError(f"r_oracle requires k >= 1, got {k}")
    return CountTable(
        "squares", k, None, tuple(_convolution_power(square_base(order), k, order))
    )


def t_oracle(k: int, order: int) -> CountTable:
    """t_table oracle: k-th convolution power of the triangular indicator."""
    if k < 1:
        raise ValueError(f"t_oracle requires k >= 1, got {k}")
    return CountTable(
        "triangular", k, None, tuple(_convolution_power(triangular_base(order), k, order))
    )


def u_oracle(k: int, l: int, order: int) -> CountTable:
    """u_table oracle: product of the square and triangular power tables."""
    if k < 1 or l < 1:
        raise ValueError(f"u_oracle requires k, l >= 1, got k={k}, l={l}")
    squares = _convolution_power(square_base(order), k, order)
    triangulars = _convolution_power(triangular_base(order), l, order)
    return CountTable("mixed", k, l, tuple(_convolve(squares, triangulars, order)))
