"""Integer-arithmetic substrate.

Divisor-function sieve, the divisor summatory function D(x) and the
harmonic sum with its first two correction coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RangeError, ResourceError

#: Euler's constant, correctly rounded to double precision.
EULER_GAMMA = 0.57721566490153286060651209008240243

#: Largest sieve built unless the caller raises the budget (about 1.6 GB of int64).
DEFAULT_SIEVE_BUDGET = 200_000_000


@dataclass(frozen=True)
class DivisorSieve:
    """Table of d(n) for 1 <= n <= limit, plus the running sums D(n).

    Both arrays are read-only; index 0 holds 0 so that ``counts[n] == d(n)``
    and ``cumulative[n] == D(n)``.
    """

    limit: int
    counts: np.ndarray
    cumulative: np.ndarray

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return self.limit


@dataclass(frozen=True)
class HarmonicExpansion:
    x: float
    sum: float
    gamma1: float
    gamma2: float


def build_divisor_sieve(N: int, budget: int = DEFAULT_SIEVE_BUDGET) -> DivisorSieve:
    """Tabulate d(n) for n <= N.

    Every divisor pair (d, n/d) with d < n/d is counted by visiting the
    multiples d*k, k > d, for d <= sqrt(N); squares get one extra count.
    The work is O(N log N) additions but only O(sqrt(N)) Python-level loops.
    """
    N = int(N)
    if N < 1:
        raise RangeError(f"sieve limit must be >= 1, got {N}")
    if N > budget:
        raise ResourceError(f"sieve limit {N} exceeds memory budget {budget}")
    try:
        counts = np.zeros(N + 1, dtype=np.int64)
    except MemoryError as exc:  # pragma: no cover - depends on host
        raise ResourceError(f"cannot allocate divisor table for N={N}") from exc
    for d in range(1, math.isqrt(N) + 1):
        counts[d * d] += 1
        counts[d * (d + 1)::d] += 2
    cumulative = np.cumsum(counts)
    counts.flags.writeable = False
    cumulative.flags.writeable = False
    return DivisorSieve(limit=N, counts=counts, cumulative=cumulative)


def trial_division_count(n: int) -> int:
    """d(n) from the prime factorisation of n (trial division)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    total = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            total *= e + 1
        p += 1 if p == 2 else 2
    if n > 1:
        total *= 2
    return total


def divisor_count(n: int, sieve: DivisorSieve | None = None) -> int:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if sieve is not None and n <= sieve.limit:
        return int(sieve.counts[n])
    return trial_division_count(n)


def divisor_summatory(x: float, sieve: DivisorSieve) -> int:
    """D(x) = sum of d(n) over n <= x, read from the sieve's running sums."""
    if x < 0:
        raise RangeError(f"x must be >= 0, got {x}")
    n = math.floor(x)
    if n > sieve.limit:
        raise RangeError(f"floor(x)={n} exceeds sieve limit {sieve.limit}")
    return int(sieve.cumulative[n])


def harmonic_sum(x: float) -> float:
    """Sum of 1/n for n <= x, correctly rounded sum of the rounded terms."""
    if x < 1:
        raise ValueError(f"harmonic_sum needs x >= 1, got {x}")
    n = math.floor(x)
    return math.fsum(1.0 / np.arange(1, n + 1, dtype=np.float64))


def harmonic_expansion(x: float) -> HarmonicExpansion:
    """Extract the first two correction coefficients of the harmonic sum.

    ``gamma1 = x (H(x) - log x - gamma)`` is the raw first-order coefficient.
    ``gamma2`` is the second-order coefficient left after removing the
    first-order term in its limiting form ``-psi(x)/x``:
    ``gamma2 = x^2 (H(x) - log x - gamma + psi(x)/x)``, which tends to
    ``-psi_2(x)`` (and to -1/12 on integers).
    """
    if x < 2:
        raise ValueError(f"harmonic_expansion needs x >= 2, got {x}")
    h = harmonic_sum(x)
    rest = h - math.log(x) - EULER_GAMMA
    saw = x - math.floor(x) - 0.5
    return HarmonicExpansion(
        x=x,
        sum=h,
        gamma1=x * rest,
        gamma2=x * x * (rest + saw / x),
    )


def euler_gamma_from_tail(N: int = 1000, terms: int = 6) -> float:
    """Independent value of Euler's constant from H(N) - log N and its
    Euler-Maclaurin tail 1/(2N) - sum B_2k / (2k N^2k)."""
    from .periodic import BERNOULLI_NUMBERS

    corr = -1.0 / (2 * N)
    for k in range(1, terms + 1):
        b = BERNOULLI_NUMBERS[2 * k]
        corr += float(b) / (2 * k * N ** (2 * k))
    return math.fsum([harmonic_sum(N), -math.log(N), corr])
