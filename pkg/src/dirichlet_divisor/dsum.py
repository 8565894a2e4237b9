"""Divisor-weighted summation formula.

For f continuously differentiable on [a, b], 0 < a <= b,

    sum_{a<n<=b} d(n) f(n) = t1 + ... + t8

with

    t1 =  int (log u + 2 gamma) f(u) du
    t2 = -2 int f(u) psi_2(sqrt u) / u du
    t3 = -int f(u) psi(sqrt u) / sqrt u du
    t4 =  4 int f(u) I(sqrt u) du,            I(T) = int_T^oo psi_2(t)/t^3 dt
    t5 = -f(b) psi(sqrt b)^2 + f(a) psi(sqrt a)^2
    t6 =  int psi(sqrt u)^2 f'(u) du
    t7 =  2 f(a) sum_{m<=sqrt a} psi(a/m) - 2 f(b) sum_{m<=sqrt b} psi(b/m)
    t8 =  2 sum_{m<=sqrt b} int_{max(a, m^2)}^b psi(u/m) f'(u) du

all integrals running over [a, b] unless marked.  t8 can alternatively be
evaluated from the Fourier series of psi truncated at V terms,

    t8 ~ -(2/pi) sum_m sum_{v=1}^V (1/v) int sin(2 pi v u/m) f'(u) du,

which is the cross-check mode ``tail_mode="fourier"``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .arith import EULER_GAMMA, DivisorSieve
from .errors import RangeError, ToleranceError
from .periodic import psi, psi2_tail_values
from .quadrature import QuadConfig, integrate_panels, piece_floor

SAWTOOTH = "sawtooth"
FOURIER = "fourier"


@dataclass(frozen=True)
class SmoothFn:
    """A function and its derivative on [a, b].

    Both callables must accept numpy arrays and act elementwise.
    """

    eval: Callable
    deriv: Callable
    a: float
    b: float
    name: str = ""

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"need a > 0, got a={self.a}")
        if self.b < self.a:
            raise ValueError(f"need b >= a, got [{self.a}, {self.b}]")

    def on(self, a, b):
        return dataclasses.replace(self, a=a, b=b)

    def derivative_mismatch(self, samples: int = 100) -> float:
        """Largest gap between ``deriv`` and a centred difference of ``eval``
        at interior points, relative to the local scale of f."""
        if self.b == self.a:
            return 0.0
        u = np.linspace(self.a, self.b, samples + 2)[1:-1]
        h = 1e-5 * np.maximum(1.0, np.abs(u))
        h = np.minimum(h, 0.5 * (u - self.a))
        fd = (self.eval(u + h) - self.eval(u - h)) / (2 * h)
        scale = np.maximum(1.0, np.abs(self.eval(u)) / u + np.abs(self.deriv(u)))
        return float(np.max(np.abs(fd - self.deriv(u)) / scale))


REGISTRY = {
    "one": (lambda u: np.ones_like(np.asarray(u, dtype=float)), lambda u: np.zeros_like(np.asarray(u, dtype=float))),
    "id": (lambda u: np.asarray(u, dtype=float), lambda u: np.ones_like(np.asarray(u, dtype=float))),
    "inv": (lambda u: 1.0 / np.asarray(u, dtype=float), lambda u: -1.0 / np.asarray(u, dtype=float) ** 2),
    "log": (np.log, lambda u: 1.0 / np.asarray(u, dtype=float)),
    "expdecay": (lambda u: np.exp(-np.asarray(u, dtype=float) / 50.0),
                 lambda u: -np.exp(-np.asarray(u, dtype=float) / 50.0) / 50.0),
}


def registered(name: str, a: float, b: float) -> SmoothFn:
    try:
        f, df = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; choose from {sorted(REGISTRY)}") from None
    return SmoothFn(f, df, a, b, name)


@dataclass(frozen=True)
class Theorem2Breakdown:
    t1: float
    t2: float
    t3: float
    t4: float
    t5: float
    t6: float
    t7: float
    t8: float
    rhs_total: float
    lhs: float
    residual: float
    tail_mode: str = SAWTOOTH

    @property
    def terms(self):
        return (self.t1, self.t2, self.t3, self.t4, self.t5, self.t6, self.t7, self.t8)


@dataclass(frozen=True)
class Theorem2Report:
    lhs: float
    sawtooth: Theorem2Breakdown
    fourier: Theorem2Breakdown
    tail_discrepancy: float
    fourier_V: int


def _check_range(f, sieve):
    if math.floor(f.b) > sieve.limit:
        raise RangeError(f"floor(b)={math.floor(f.b)} exceeds sieve limit {sieve.limit}")


def lhs_divisor_sum(f: SmoothFn, sieve: DivisorSieve) -> float:
    """sum_{a<n<=b} d(n) f(n) with an exactly rounded sum of the terms."""
    _check_range(f, sieve)
    lo = math.floor(f.a) + 1
    hi = math.floor(f.b)
    if hi < lo:
        return 0.0
    n = np.arange(lo, hi + 1)
    return math.fsum(sieve.counts[lo:hi + 1] * np.asarray(f.eval(n.astype(np.float64)), dtype=float))


def _square_panels(a, b):
    k = np.arange(math.isqrt(math.floor(a)) + 1, math.isqrt(math.floor(b)) + 1, dtype=np.float64)
    inner = (k * k)[(k * k > a) & (k * k < b)]
    edges = np.concatenate([[a], inner, [b]])
    return edges[:-1], edges[1:]


def sawtooth_sum(x: float) -> float:
    """sum_{m <= sqrt x} psi(x/m); zero for x < 1."""
    if x < 1:
        return 0.0
    m = np.arange(1, math.isqrt(math.floor(x)) + 1, dtype=np.float64)
    return math.fsum(psi(x / m))


def _sqrt_saw(u):
    r = np.sqrt(u)
    return r - piece_floor(r) - 0.5


def _sqrt_saw2(u):
    s = np.sqrt(u) - piece_floor(np.sqrt(u))
    return 0.5 * (s * s - s + 1.0 / 6.0)


def _term(index, fn):
    try:
        return fn()
    except ToleranceError as exc:
        raise ToleranceError(f"term t{index}: {exc}", exc.best_bound, exc.where) from exc


def _fn_scale(f):
    u = np.linspace(f.a, f.b, 257)
    return float(np.max(np.abs(f.eval(u))))


def _t8_sawtooth(f, cfg):
    los, his, tags = [], [], []
    for m in range(1, math.isqrt(math.floor(f.b)) + 1):
        lo = max(f.a, float(m * m))
        k = np.arange(math.floor(lo / m) + 1, math.floor(f.b / m) + 1, dtype=np.float64) * m
        k = k[(k > lo) & (k < f.b)]
        edges = np.concatenate([[lo], k, [f.b]])
        los.append(edges[:-1])
        his.append(edges[1:])
        tags.append(np.full(edges.size - 1, m))
    if not los:
        return 0.0

    def g(u, m):
        q = u / m
        return (q - piece_floor(q) - 0.5) * f.deriv(u)

    return 2.0 * integrate_panels(g, np.concatenate(los), np.concatenate(his), np.concatenate(tags), cfg)


def _phi(theta):
    """int_0^1 e^{i theta s} (1 - s) ds, stable for small theta."""
    theta = np.asarray(theta, dtype=np.float64)
    out = np.empty(theta.shape, dtype=np.complex128)
    small = np.abs(theta) < 0.5
    big = ~small
    tb = theta[big]
    out[big] = (1.0 + 1j * tb - np.exp(1j * tb)) / (tb * tb)
    ts = 1j * theta[small]
    acc = np.zeros(ts.shape, dtype=np.complex128)
    for k in range(16, -1, -1):
        acc = acc * ts + 1.0 / math.factorial(k + 2)
    out[small] = acc
    return out


def fourier_moments(deriv, lo, hi, m, V, step=1.0 / 256):
    """int_lo^hi e^{2 pi i v u/m} g(u) du for v = 1..V, g linearly interpolated.

    The grid spacing is m/N with N = ceil(m/step), so e^{2 pi i v h/m} is an
    N-th root of unity and the node sums for all v come from one length-N
    FFT of the node values folded modulo N.  Interpolation with hat
    functions gives exact panel weights, independent of v.
    """
    N = max(1, math.ceil(m / step))
    h = m / N
    n = int(math.floor((hi - lo) / h))
    v = np.arange(1, V + 1)
    omega = 2 * np.pi * v / m

    def phase(u):
        # e^{2 pi i v u/m}, reducing u/m mod 1 before scaling by v
        frac = math.fmod(u / m, 1.0)
        return np.exp(2j * np.pi * np.mod(v * frac, 1.0))

    total = np.zeros(V, dtype=np.complex128)
    un = lo + n * h
    if n >= 1:
        j = np.arange(n + 1)
        gj = np.asarray(deriv(lo + j * h), dtype=np.float64)
        folded = np.bincount(j % N, weights=gj, minlength=N)
        sums = np.fft.ifft(folded) * N
        theta = 2 * np.pi * v / N
        sigma = np.sinc(v / N) ** 2
        S = phase(lo) * sums[v % N]
        total += h * (S * sigma
                      + gj[0] * phase(lo) * (_phi(theta) - sigma)
                      + gj[-1] * phase(un) * (_phi(-theta) - sigma))
        g_un = gj[-1]
    else:
        g_un = float(deriv(np.array([lo]))[0])
    hp = hi - un
    if hp > 0:
        g_hi = float(deriv(np.array([hi]))[0])
        tp = omega * hp
        total += hp * (g_un * phase(un) * _phi(tp) + g_hi * phase(hi) * _phi(-tp))
    return total


def _t8_fourier(f, V):
    total = []
    for m in range(1, math.isqrt(math.floor(f.b)) + 1):
        lo = max(f.a, float(m * m))
        if lo >= f.b:
            continue
        mom = fourier_moments(f.deriv, lo, f.b, m, V)
        total.append(np.imag(mom) / np.arange(1, V + 1))
    if not total:
        return 0.0
    return -2.0 / math.pi * math.fsum(np.concatenate(total))


def rhs_theorem2(f: SmoothFn, sieve: DivisorSieve, cfg: QuadConfig | None = None,
                 tail_mode: str = SAWTOOTH) -> Theorem2Breakdown:
    """Evaluate every term of the summation formula and compare with the sum."""
    cfg = cfg or QuadConfig()
    if tail_mode not in (SAWTOOTH, FOURIER):
        raise ValueError(f"tail_mode must be {SAWTOOTH!r} or {FOURIER!r}")
    _check_range(f, sieve)
    a, b = float(f.a), float(f.b)
    lhs = lhs_divisor_sum(f, sieve)
    if a == b:
        return Theorem2Breakdown(*([0.0] * 9), lhs=lhs, residual=lhs, tail_mode=tail_mode)

    lo, hi = _square_panels(a, b)
    whole = (np.array([a]), np.array([b]))
    F, dF = f.eval, f.deriv
    tail_tol = min(1e-12, cfg.abs_tol / (8.0 * (b - a) * max(_fn_scale(f), 1e-300)))

    def t4_integrand(u, tag):
        tail, _ = psi2_tail_values(np.sqrt(u), tail_tol)
        return F(u) * tail

    t1 = _term(1, lambda: integrate_panels(lambda u, t: (np.log(u) + 2 * EULER_GAMMA) * F(u), *whole, cfg=cfg))
    t2 = _term(2, lambda: -2.0 * integrate_panels(lambda u, t: F(u) * _sqrt_saw2(u) / u, lo, hi, cfg=cfg))
    t3 = _term(3, lambda: -integrate_panels(lambda u, t: F(u) * _sqrt_saw(u) / np.sqrt(u), lo, hi, cfg=cfg))
    t4 = _term(4, lambda: 4.0 * integrate_panels(t4_integrand, lo, hi, cfg=cfg))
    fa, fb = float(F(np.array([a]))[0]), float(F(np.array([b]))[0])
    pa, pb = float(psi(math.sqrt(a))), float(psi(math.sqrt(b)))
    t5 = -fb * pb * pb + fa * pa * pa
    t6 = _term(6, lambda: integrate_panels(lambda u, t: _sqrt_saw(u) ** 2 * dF(u), lo, hi, cfg=cfg))
    t7 = 2.0 * fa * sawtooth_sum(a) - 2.0 * fb * sawtooth_sum(b)
    if tail_mode == SAWTOOTH:
        t8 = _term(8, lambda: _t8_sawtooth(f, cfg))
    else:
        t8 = _t8_fourier(f, cfg.fourier_V)
    terms = [t1, t2, t3, t4, t5, t6, t7, t8]
    rhs = math.fsum(terms)
    return Theorem2Breakdown(*terms, rhs_total=rhs, lhs=lhs, residual=lhs - rhs, tail_mode=tail_mode)


def verify_theorem2(f: SmoothFn, sieve: DivisorSieve, cfg: QuadConfig | None = None) -> Theorem2Report:
    cfg = cfg or QuadConfig()
    saw = rhs_theorem2(f, sieve, cfg, SAWTOOTH)
    fou = rhs_theorem2(f, sieve, cfg, FOURIER)
    return Theorem2Report(
        lhs=saw.lhs,
        sawtooth=saw,
        fourier=fou,
        tail_discrepancy=fou.t8 - saw.t8,
        fourier_V=cfg.fourier_V,
    )
