"""Real-s approximate functional equations for zeta(s) and zeta(s)^2.

    zeta(s)   = sum_{n<=x} n^-s      + E1(s, x)
    zeta(s)^2 = sum_{n<=x} d(n) n^-s + E2(s, x)

E1 is computed as the Euler-Maclaurin tail sum_{n>x} n^-s (analytically
continued for s < 1), which is the same quantity as zeta(s) minus the
partial sum but without the cancellation.  E2 has no such tail form, so the
difference zeta(s)^2 - sum d(n) n^-s is formed in extended precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .arith import DivisorSieve, harmonic_sum
from .errors import DomainError, PoleError, RangeError
from .periodic import BERNOULLI_NUMBERS, psi
from .remainder import delta_direct

DEFAULT_ORDER = 6
MAX_ORDER = 8
_TARGET = 1e-18
# E2: terms n <= _MP_HEAD are summed in extended precision, the rest as
# exactly summed doubles.
_MP_HEAD = 4096
_MP_DPS = 40


@dataclass(frozen=True)
class AfeRecord:
    s: float
    x: float
    E1: float
    E2: float
    hyperbola_residual: float
    theorem3_residual: float
    scaled_residual: float


def _check_s(s):
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if not s > 0:
        raise DomainError(f"only real s > 0 is supported, got s={s}")


def _check_order(K):
    if not 1 <= K <= MAX_ORDER:
        raise ValueError(f"Euler-Maclaurin order must be in [1, {MAX_ORDER}], got {K}")


def _em_coefficients(K):
    return [BERNOULLI_NUMBERS[2 * k] / math.factorial(2 * k) for k in range(1, K + 2)]


def _rising(s, n):
    out = 1.0
    for j in range(n):
        out *= s + j
    return out


def _next_term_size(s, N, K):
    c = abs(float(BERNOULLI_NUMBERS[2 * K + 2])) / math.factorial(2 * K + 2)
    return c * abs(_rising(s, 2 * K + 1)) * float(N) ** (-s - 2 * K - 1)


def _min_start(s, K, target=_TARGET):
    """Smallest N >= 10 whose first omitted Euler-Maclaurin term is below
    target times the leading term."""
    N = 10
    while _next_term_size(s, N, K) > target * float(N) ** (-s) * min(1.0, N / abs(s - 1)) and N < 10**7:
        N *= 2 if N < 1000 else 1.25
        N = int(N)
    return N


def _em_tail(s, N, K, num=float):
    """sum_{n>=N} n^-s by Euler-Maclaurin of order K, in the number type ``num``."""
    s = num(s)
    Nn = num(N)
    total = Nn ** (1 - s) / (s - 1) + Nn ** (-s) / 2
    rising = s
    power = Nn ** (-s - 1)
    for k, c in enumerate(_em_coefficients(K)[:K], start=1):
        total += num(c.numerator) / num(c.denominator) * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= Nn * Nn
    return total


def zeta_tail(s: float, N: int, K: int = DEFAULT_ORDER) -> float:
    """sum_{n>=N} n^-s (continued analytically for 0 < s < 1)."""
    _check_s(s)
    _check_order(K)
    start = max(int(N), _min_start(s, K))
    if start > N:
        n = np.arange(N, start, dtype=np.float64)
        head = math.fsum(n ** (-s))
        return math.fsum([head, _em_tail(s, start, K)])
    return _em_tail(s, N, K)


def zeta_real(s: float, K: int = DEFAULT_ORDER, N: int | None = None) -> float:
    """zeta(s) for real s > 0, s != 1, via Euler-Maclaurin.

    ``N`` is the cut between the explicit sum and the expansion; by default
    the smallest N keeping the first omitted term below ~1e-18 relative.
    """
    _check_s(s)
    _check_order(K)
    if N is None:
        N = _min_start(s, K)
    n = np.arange(1, N, dtype=np.float64)
    return math.fsum([math.fsum(n ** (-s)), _em_tail(s, N, K)])


def _zeta_mp(s, K=MAX_ORDER):
    N = 4 * _min_start(s, K)
    head = mpmath.fsum(mpmath.mpf(n) ** (-mpmath.mpf(s)) for n in range(1, N))
    return head + _em_tail(s, N, K, num=mpmath.mpf)


def E1(s: float, x: float) -> float:
    """zeta(s) - sum_{n<=x} n^-s, evaluated as the tail from floor(x) + 1."""
    _check_s(s)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    return zeta_tail(s, math.floor(x) + 1)


def E1_asymptotic(s: float, x: float) -> float:
    """x^(1-s)/(s-1) + x^-s psi(x)."""
    _check_s(s)
    if x < 1:
        raise ValueError(f"E1_asymptotic needs x >= 1, got {x}")
    return x ** (1 - s) / (s - 1) + x ** (-s) * float(psi(x))


def E2(s: float, x: float, sieve: DivisorSieve) -> float:
    """zeta(s)^2 - sum_{n<=x} d(n) n^-s.

    The difference is formed with 40 significant digits: zeta(s) and the
    first 4096 terms in mpmath, later terms as doubles summed exactly.
    Each double term carries relative error <= 2^-53, so the result is
    accurate to about 1e-16 times the sum of the terms past n = 4096.
    """
    _check_s(s)
    n_max = math.floor(x)
    if n_max > sieve.limit:
        raise RangeError(f"floor(x)={n_max} exceeds sieve limit {sieve.limit}")
    head_end = min(n_max, _MP_HEAD)
    with mpmath.workdps(_MP_DPS):
        ms = mpmath.mpf(s)
        z = _zeta_mp(s)
        head = mpmath.fsum(int(sieve.counts[n]) * mpmath.mpf(n) ** (-ms) for n in range(1, head_end + 1))
        tail = 0.0
        if n_max > head_end:
            n = np.arange(head_end + 1, n_max + 1)
            tail = math.fsum(sieve.counts[head_end + 1:n_max + 1] * n.astype(np.float64) ** (-s))
        return float(z * z - head - mpmath.mpf(tail))


def hyperbola_identity_rhs(s: float, x: float, sieve: DivisorSieve | None = None) -> float:
    """2 sum_{n<=sqrt x} n^-s E1(s, x/n) + E1(s, sqrt x)^2 (exactly E2)."""
    _check_s(s)
    if sieve is not None and math.floor(x) > sieve.limit:
        raise RangeError(f"floor(x)={math.floor(x)} exceeds sieve limit {sieve.limit}")
    r = math.sqrt(x)
    terms = [n ** (-s) * E1(s, x / n) for n in range(1, math.isqrt(math.floor(x)) + 1)]
    e = E1(s, r)
    return math.fsum([2.0 * math.fsum(terms), e * e])


def theorem3_rhs(s: float, x: float, sieve: DivisorSieve) -> float:
    """2 x^(1-s)/(s-1) H(sqrt x) - x^-s Delta(x) + E1(s, sqrt x)^2.

    Delta(x) is taken from the divisor table (D(x) minus the main term).
    """
    _check_s(s)
    r = math.sqrt(x)
    h = harmonic_sum(r) if r >= 1 else 0.0
    e = E1(s, r)
    return math.fsum([
        2.0 * x ** (1 - s) / (s - 1) * h,
        -(x ** (-s)) * delta_direct(x, sieve),
        e * e,
    ])


def afe_record(s: float, x: float, sieve: DivisorSieve) -> AfeRecord:
    e2 = E2(s, x, sieve)
    hyp = e2 - hyperbola_identity_rhs(s, x, sieve)
    t3 = e2 - theorem3_rhs(s, x, sieve)
    return AfeRecord(
        s=s,
        x=x,
        E1=E1(s, x),
        E2=e2,
        hyperbola_residual=hyp,
        theorem3_residual=t3,
        scaled_residual=abs(t3) * x**s / s,
    )
