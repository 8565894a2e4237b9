"""Remainder of the Dirichlet divisor problem and its split Delta = A + B.

    D(x) = x log x + (2 gamma - 1) x + 1/4 + Delta(x)
    A(x) = -2 sum_{m <= sqrt x} psi(x/m)
    B(x) = 4x int_{sqrt x}^oo psi_2(u)/u^3 du - psi(sqrt x)^2 - 2 psi_2(sqrt x)

For integer x the sawtooth sum A(x) also has a trigonometric form; see
:func:`A_trig_integer`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import EULER_GAMMA, DivisorSieve, divisor_summatory
from .periodic import cot_partial_fraction, psi, psi2_tail_integral, psi2_tail_values, psi_r

COTANGENT = "cotangent"
PARTIAL_FRACTION = "partial_fraction"


@dataclass(frozen=True)
class RemainderBreakdown:
    x: float
    D: int
    main_term: float
    delta: float
    A: float
    B: float
    residual: float


def main_term(x: float) -> float:
    """x log x + (2 gamma - 1) x + 1/4."""
    if x <= 0:
        raise ValueError(f"main_term needs x > 0, got {x}")
    return x * math.log(x) + (2 * EULER_GAMMA - 1) * x + 0.25


def delta_direct(x: float, sieve: DivisorSieve) -> float:
    return divisor_summatory(x, sieve) - main_term(x)


def _floor_sqrt(x):
    return math.isqrt(math.floor(x))


def A_of(x: float) -> float:
    """-2 sum_{m <= sqrt x} psi(x/m), O(sqrt x) terms, exactly rounded sum."""
    if x < 1:
        raise ValueError(f"A_of needs x >= 1, got {x}")
    M = _floor_sqrt(x)
    if float(x).is_integer():
        m = np.arange(1, M + 1, dtype=np.int64)
        frac = (int(x) % m) / m
    else:
        m = np.arange(1, M + 1, dtype=np.float64)
        q = x / m
        frac = q - np.floor(q)
    return M - 2.0 * math.fsum(frac)


def B_of(x: float, tol: float = 1e-12) -> float:
    """Bounded part B(x); the tail integral is requested to tol/(8x)."""
    if x < 1:
        raise ValueError(f"B_of needs x >= 1, got {x}")
    T = math.sqrt(x)
    tail = psi2_tail_integral(T, tol / (8.0 * x)).value
    saw = float(psi(T))
    return 4.0 * x * tail - saw * saw - 2.0 * float(psi_r(T, 2))


def B_values(x, tol: float = 1e-12) -> np.ndarray:
    """Vectorised :func:`B_of` over an array of x >= 1."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 1):
        raise ValueError("B_values needs x >= 1")
    T = np.sqrt(x)
    tail, _ = psi2_tail_values(T, tol / (8.0 * float(np.max(x))))
    saw = psi(T)
    return 4.0 * x * tail - saw * saw - 2.0 * psi_r(T, 2)


def decompose(x: float, sieve: DivisorSieve, tol: float = 1e-12) -> RemainderBreakdown:
    D = divisor_summatory(x, sieve)
    mt = main_term(x)
    delta = D - mt
    a = A_of(x)
    b = B_of(x, tol)
    return RemainderBreakdown(x=x, D=D, main_term=mt, delta=delta, A=a, B=b, residual=delta - a - b)


def default_truncation(m: int) -> int:
    return max(1000, -(-1000 // m) * m)


@lru_cache(maxsize=4096)
def _residue_coefficients(m, mode, V):
    """(1/pi) times the inner factor for r = 1..m-1, as a read-only array."""
    r = np.arange(1, m)
    if mode == COTANGENT:
        coeff = 1.0 / (m * np.tan(np.pi * r / m))
    elif mode == PARTIAL_FRACTION:
        coeff = np.array([cot_partial_fraction(int(k), m, V) for k in r]) / math.pi
    else:
        raise ValueError(f"unknown mode {mode!r}")
    coeff.flags.writeable = False
    return coeff


def _trig_parts(x, mode, V):
    if not float(x).is_integer() or x < 1:
        raise ValueError(f"trigonometric form needs a positive integer x, got {x}")
    x = int(x)
    dividing = 0
    parts = []
    for m in range(1, math.isqrt(x) + 1):
        if x % m == 0:
            dividing += 1
            continue
        coeff = _residue_coefficients(m, mode, V if V is not None else default_truncation(m))
        # reduce r*x mod m in integers so the angle is exact
        phase = (np.arange(1, m, dtype=np.int64) * (x % m)) % m
        parts.append((2.0 * np.pi * phase / m, coeff))
    return dividing, parts


def A_trig_integer(x: int, mode: str = COTANGENT, V: int | None = None) -> float:
    """A(x) for integer x through the residue-class Fourier form.

    For m not dividing x,
        -2 psi(x/m) = (1/pi) sum_{r=1}^{m-1} sin(2 pi r x/m) (1/r - 2r sum_v 1/(m^2 v^2 - r^2)),
    the bracket being (pi/m) cot(pi r/m); every m dividing x contributes
    exactly 1.  ``mode`` picks the cotangent closed form or the partial
    fraction truncated at V terms (default :func:`default_truncation`).
    """
    dividing, parts = _trig_parts(x, mode, V)
    terms = [float(dividing)]
    for angle, coeff in parts:
        terms.extend(np.sin(angle) * coeff)
    return math.fsum(terms)


def A_trig_integer_complex(x: int, mode: str = COTANGENT, V: int | None = None) -> complex:
    """Same sum accumulated as (1/(pi i)) sum_r e^{2 pi i r x/m} (...).

    The real part equals :func:`A_trig_integer`; the imaginary part,
    -(1/pi) sum cos(.) (...), cancels between r and m - r.
    """
    dividing, parts = _trig_parts(x, mode, V)
    re = [float(dividing)]
    im = []
    for angle, coeff in parts:
        re.extend(np.sin(angle) * coeff)
        im.extend(-np.cos(angle) * coeff)
    return complex(math.fsum(re), math.fsum(im))
