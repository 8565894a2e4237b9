"""Periodized Bernoulli functions and the integrals built on them.

``psi(u) = u - floor(u) - 1/2`` and ``psi_r(u) = B_r({u}) / r!`` with
``d/du psi_{r+1} = psi_r``.  Besides point evaluation this module provides
the truncated Fourier series, the tail integral

    I(T) = int_T^oo psi_2(t) / t^3 dt

and the cotangent partial-fraction sums used by the integer-x formula for
the hyperbola sawtooth sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ToleranceError

MAX_ORDER = 8


def _bernoulli_numbers(n):
    # B_1 = -1/2 convention.
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        B[m] = -sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1)
    return B


BERNOULLI_NUMBERS = _bernoulli_numbers(20)


def _bernoulli_poly_coeffs(r):
    """Coefficients of B_r(t)/r!, highest degree first (for np.polyval)."""
    exact = [math.comb(r, k) * BERNOULLI_NUMBERS[k] / math.factorial(r) for k in range(r + 1)]
    return np.array([float(c) for c in exact])


# Row r holds B_r(t)/r! for 1 <= r <= MAX_ORDER.
_POLY = {r: _bernoulli_poly_coeffs(r) for r in range(1, MAX_ORDER + 1)}

# sup |psi_r| = |B_r| / r! for even r.
_SUP_PSI8 = float(abs(BERNOULLI_NUMBERS[8]) / math.factorial(8))

# Integration by parts of psi_2(t) t^-3, six steps: boundary coefficients
# 3*4*...*(2+j) and the coefficient in front of the remaining psi_8 integral.
_IBP_COEFFS = (1.0, 3.0, 12.0, 60.0, 360.0, 2520.0)
_IBP_REMAINDER = 20160.0
_MAX_PERIODS = 1_000_000

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def psi(u):
    """Sawtooth ``u - floor(u) - 1/2``; works on scalars and arrays."""
    return u - np.floor(u) - 0.5


def psi_r(u, r: int):
    if r not in _POLY:
        raise ValueError(f"psi_r supports 1 <= r <= {MAX_ORDER}, got r={r}")
    t = u - np.floor(u)
    return np.polyval(_POLY[r], t)


def psi_r_fourier(u: float, r: int, V: int) -> float:
    """Real part of ``-sum_{1<=|n|<=V} e^{2 pi i n u} / (2 pi i n)^r``.

    Pairing n with -n gives ``-2 sum cos(2 pi n u - r pi/2) / (2 pi n)^r``.
    For r = 1 the series converges like 1/V and to 0 at integers.
    """
    if r < 1 or V < 1:
        raise ValueError("need r >= 1 and V >= 1")
    frac = u - math.floor(u)
    n = np.arange(1, V + 1, dtype=np.float64)
    terms = np.cos(2 * np.pi * n * frac - r * np.pi / 2) / (2 * np.pi * n) ** r
    # smallest terms first
    return -2.0 * math.fsum(terms[::-1])


@dataclass(frozen=True)
class TailIntegralResult:
    lower_limit: float
    value: float
    error_bound: float


def _ibp_remainder_bound(T):
    return _IBP_REMAINDER * _SUP_PSI8 / (8.0 * T**8)


def _ibp_value(T):
    T = np.asarray(T, dtype=np.float64)
    total = np.zeros_like(T)
    power = T**3
    for j, c in enumerate(_IBP_COEFFS):
        total -= c * psi_r(T, 3 + j) / power
        power = power * T
    return total


def _cutoff_for(tol):
    """Smallest K >= 10 whose integration-by-parts remainder is <= tol."""
    K = max(10, math.ceil((_IBP_REMAINDER * _SUP_PSI8 / (8.0 * tol)) ** 0.125))
    if K > _MAX_PERIODS:
        raise ToleranceError(
            f"tail tolerance {tol:g} needs {K} periods (limit {_MAX_PERIODS})",
            best_bound=_ibp_remainder_bound(_MAX_PERIODS),
        )
    return K


def _psi2_over_cube(t, left):
    """psi_2(t)/t^3 for t in [left, left+1] with left an integer."""
    s = t - left
    return 0.5 * (s * s - s + 1.0 / 6.0) / t**3


def _gl_panels(lo, hi, left):
    """16-point Gauss-Legendre of psi_2/t^3 over [lo, hi] inside one period."""
    lo = np.asarray(lo, dtype=np.float64)[..., None]
    hi = np.asarray(hi, dtype=np.float64)[..., None]
    left = np.asarray(left, dtype=np.float64)[..., None]
    half = 0.5 * (hi - lo)
    t = lo + half * (_GL_NODES + 1.0)
    return np.sum(half * _GL_WEIGHTS * _psi2_over_cube(t, left), axis=-1)


@lru_cache(maxsize=16)
def _integer_table(K):
    """I(k) for integers 0 <= k <= K (index 0 unused).

    Full periods [j, j+1], j < K, by Gauss-Legendre; the part beyond K by
    integration by parts.  Suffix sums run from the small end up.
    """
    j = np.arange(1, K, dtype=np.float64)
    periods = _gl_panels(j, j + 1.0, j)
    table = np.zeros(K + 1)
    tail = float(_ibp_value(float(K)))
    acc = np.cumsum(periods[::-1])[::-1] if K > 1 else np.zeros(0)
    table[1:K] = acc + tail
    table[K] = tail
    table.flags.writeable = False
    return table


def _below_one(T):
    # geometric panels [T, 2T, ..., 1]: the 1/t^3 singularity stays at a
    # fixed relative distance from each panel
    edges = [T]
    while edges[-1] * 2 < 1.0:
        edges.append(edges[-1] * 2)
    edges.append(1.0)
    lo = np.array(edges[:-1])
    hi = np.array(edges[1:])
    return float(np.sum(_gl_panels(lo, hi, np.zeros_like(lo))))


def psi2_tail_values(T, tol: float = 1e-12):
    """Vectorised I(T) for an array of lower limits T > 0.

    Returns ``(values, error_bound)``, the bound being common to all entries.
    """
    T = np.asarray(T, dtype=np.float64)
    if np.any(T <= 0):
        raise ValueError("tail integral needs T > 0")
    if tol <= 0:
        raise ValueError("tol must be positive")
    K = _cutoff_for(tol)
    out = np.empty_like(T)
    far = T >= K
    if np.any(far):
        out[far] = _ibp_value(T[far])
    near = ~far
    if np.any(near):
        table = _integer_table(K)
        Tn = T[near]
        ceil = np.maximum(np.ceil(Tn), 1.0)
        lo = np.where(Tn < 1.0, 1.0, Tn)
        part = _gl_panels(lo, ceil, ceil - 1.0)
        vals = part + table[ceil.astype(np.int64)]
        small = Tn < 1.0
        if np.any(small):
            vals[small] += [_below_one(t) for t in Tn[small]]
        out[near] = vals
    return out, _ibp_remainder_bound(K)


def psi2_tail_integral(T: float, tol: float = 1e-12) -> TailIntegralResult:
    """int_T^oo psi_2(t)/t^3 dt with truncation error at most ``tol``.

    Far out (T >= K, K fixed by ``tol``) six integrations by parts give the
    value with remainder <= 20160 sup|psi_8| / (8 T^8).  Closer in, whole
    periods up to K are integrated with a 16-point Gauss-Legendre rule and
    the expansion is applied at K.
    """
    if T <= 0:
        raise ValueError(f"tail integral needs T > 0, got {T}")
    values, bound = psi2_tail_values(np.array([float(T)]), tol)
    if T >= _cutoff_for(tol):
        bound = _ibp_remainder_bound(T)
    return TailIntegralResult(lower_limit=float(T), value=float(values[0]), error_bound=bound)


def cot_closed(r: int, m: int) -> float:
    """(pi/m) cot(pi r/m)."""
    _check_residue(r, m)
    return (math.pi / m) / math.tan(math.pi * r / m)


def _check_residue(r, m):
    if m < 2 or not 1 <= r <= m - 1:
        raise ValueError(f"need 1 <= r <= m-1 and m >= 2, got r={r}, m={m}")


def cot_partial_fraction(r: int, m: int, V: int) -> float:
    """``1/r - 2r sum_{v>=1} 1/(m^2 v^2 - r^2)`` from V explicit terms.

    The tail v > V is replaced by its midpoint-rule integral from V + 1/2
    plus the first Euler-Maclaurin correction g'(V+1/2)/24.
    """
    _check_residue(r, m)
    if V < 1:
        raise ValueError("V must be >= 1")
    v = np.arange(1, V + 1, dtype=np.float64)
    mm = float(m) * m
    rr = float(r) * r
    head = math.fsum(1.0 / (mm * v * v - rr))
    w = V + 0.5
    integral = math.atanh(r / (m * w)) / (m * r)
    deriv = -2.0 * mm * w / (mm * w * w - rr) ** 2
    return 1.0 / r - 2.0 * r * (head + integral + deriv / 24.0)
