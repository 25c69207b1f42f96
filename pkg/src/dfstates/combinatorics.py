"""Exact and log-domain combinatorial helpers shared by every module.

Binomials and Stirling numbers are exact integers (math.comb and a small DP
table); factorials that multiply series prefactors live in log space so that
ratios of huge factorials never leave float64 range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Arguments beyond this produce integers whose float conversion loses the
# exactness the witness formulas rely on.
_MAX_EXACT_ARG = 64


@dataclass(frozen=True)
class LogMagnitude:
    """A real number stored as sign * exp(log_abs).

    sign is -1, 0, or +1; log_abs is meaningless when sign == 0.
    """

    log_abs: float
    sign: int

    def __mul__(self, other: "LogMagnitude") -> "LogMagnitude":
        if self.sign == 0 or other.sign == 0:
            return LogMagnitude(0.0, 0)
        return LogMagnitude(self.log_abs + other.log_abs, self.sign * other.sign)

    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)


def log_factorial(k: int) -> float:
    """ln(k!) for k >= 0."""
    if k < 0:
        raise DomainError(f"log_factorial needs k >= 0, got {k}")
    return math.lgamma(k + 1)


def reciprocal_factorial(k: int) -> LogMagnitude:
    """1/k! as a LogMagnitude; zero for negative k.

    The zero convention is what makes truncated series with shifted indices
    come out right: terms whose lowering operators hit the bottom of the
    ladder carry a 1/(negative)! factor and must drop out.
    """
    if k < 0:
        return LogMagnitude(0.0, 0)
    return LogMagnitude(-math.lgamma(k + 1), 1)


def binomial(n: int, k: int) -> int:
    """C(n, k), exact; zero outside 0 <= k <= n."""
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if n > _MAX_EXACT_ARG:
        raise DomainError(f"binomial supports n <= {_MAX_EXACT_ARG}, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k), exact."""
    if n < 0 or k < 0:
        raise DomainError(f"stirling2 needs n, k >= 0, got ({n}, {k})")
    if n > _MAX_EXACT_ARG:
        raise DomainError(f"stirling2 supports n <= {_MAX_EXACT_ARG}, got {n}")
    if k > n:
        return 0
    # Row-by-row DP on S(n, k) = k*S(n-1, k) + S(n-1, k-1).
    row = [0] * (k + 1)
    row[0] = 1
    for _ in range(n):
        new = [0] * (k + 1)
        for j in range(1, k + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def double_factorial(k: int) -> int:
    """k!! with the empty-product conventions (-1)!! = 0!! = 1."""
    if k < -1:
        raise DomainError(f"double_factorial needs k >= -1, got {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def pochhammer_half(l: int) -> float:
    """(1/2)(3/2)...((l-1)/2) for even l >= 2: equals (l-1)!!/2^(l/2).

    This is the Gaussian reference value that the quadrature witness
    normalizes against.
    """
    if l < 2 or l % 2 != 0:
        raise DomainError(f"pochhammer_half needs even l >= 2, got {l}")
    return double_factorial(l - 1) / float(2 ** (l // 2))
