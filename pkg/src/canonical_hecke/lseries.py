"""Series for the central derivative of the principal-class L-function.

For a character with root number -1,

    Lambda'(1, chi, c1) / 2 = R + C,
    R = sum_n eps(n) n f(2 pi n^2 / B),
    C = sum_n a_n f(2 pi n / B),

with f the kernel from ``kernels``. Both series are summed with
``math.fsum`` and come with a rigorous bound on the discarded tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .arith import kronecker, liouville_array
from .characters import TwistedCharacter
from .kernels import EPS, f_array

DEFAULT_TOLERANCE = 1e-12
TWO_PI = 2.0 * math.pi


class RootNumberError(ValueError):
    """The derivative identity needs an odd functional equation (W = -1)."""


@dataclass(frozen=True)
class SeriesResult:
    value: float
    trunc_error: float
    terms_used: int
    # accumulated kernel and rounding error of the retained terms
    eval_error: float = 0.0

    @property
    def total_error(self) -> float:
        return self.trunc_error + self.eval_error


@dataclass(frozen=True)
class EvaluationRecord:
    D: int
    d: int
    B: int
    W: int
    R: SeriesResult
    C: SeriesResult
    lambda_prime: float
    l_prime: float

    @property
    def lambda_prime_error(self) -> float:
        return 2.0 * (self.R.total_error + self.C.total_error)


def _smallest_n(bound: Callable[[int], float], tol: float, start: int = 1) -> int:
    """Least N >= start with bound(N) < tol, for bound decreasing in N."""
    lo, hi = start, max(start, 1)
    while bound(hi) >= tol:
        lo, hi = hi, hi * 2
        if hi > 1 << 40:
            raise ArithmeticError("tolerance not reachable")
    if bound(lo) < tol:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) < tol:
            hi = mid
        else:
            lo = mid
    return hi


def _resolve_n(n_max: Optional[int], tolerance: Optional[float], bound, start: int = 1) -> int:
    if (n_max is None) == (tolerance is None):
        raise ValueError("give exactly one of n_max / tolerance")
    if n_max is not None:
        if n_max < 1:
            raise ValueError("n_max must be positive")
        return int(n_max)
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    return _smallest_n(bound, tolerance, start)


def _weighted_sum(weights: np.ndarray, args: np.ndarray):
    if len(weights) == 0:
        return 0.0, 0.0
    fv, fe = f_array(args)
    terms = weights * fv
    value = math.fsum(terms)
    aw = np.abs(weights)
    err = float(np.sum(aw * (fe + EPS * fv)) + EPS * abs(value))
    return value, err


# -- real-ideal sums: sum m(n) n f(2 pi n^2 / x) --------------------------------


def gaussian_tail_bound(x: float, N: int) -> float:
    """Bound on sum_{n>N} n f(2 pi n^2 / x), from f(t) < e^{-t} / t^2."""
    m = N + 1
    c = TWO_PI / x
    lead = (x / TWO_PI) ** 2 * m**-3.0 * math.exp(-c * m * m)
    ratio = math.exp(-2.0 * c * m)
    return lead / (1.0 - ratio)


def multiplicative_sum(
    coeffs: Callable[[int], np.ndarray],
    x: float,
    n_max: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> SeriesResult:
    """sum_{n<=N} m(n) n f(2 pi n^2 / x) for |m| <= 1.

    ``coeffs(N)`` returns m(1..N) as an array of length N.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    N = _resolve_n(n_max, tolerance, lambda k: gaussian_tail_bound(x, k))
    n = np.arange(1, N + 1, dtype=float)
    m = np.asarray(coeffs(N), dtype=float)
    value, err = _weighted_sum(m * n, TWO_PI * n * n / x)
    return SeriesResult(value, gaussian_tail_bound(x, N), N, err)


def _rational_coeffs(tw: TwistedCharacter) -> Callable[[int], np.ndarray]:
    D, d = tw.D, tw.d

    def coeffs(N: int) -> np.ndarray:
        return np.array(
            [kronecker(-D, n) * (kronecker(d, n) ** 2) for n in range(1, N + 1)],
            dtype=float,
        )

    return coeffs


def R_term(tw: TwistedCharacter, n_max: Optional[int] = None, tolerance: Optional[float] = None) -> SeriesResult:
    """Real-ideal half of the central derivative."""
    return multiplicative_sum(_rational_coeffs(tw), tw.B, n_max, tolerance)


def liouville_comparison_sum(x: float, tolerance: float = DEFAULT_TOLERANCE, n_max: Optional[int] = None) -> SeriesResult:
    if n_max is not None:
        tolerance = None
    return multiplicative_sum(lambda N: liouville_array(N)[1:], x, n_max, tolerance)


# -- complex-ideal sums --------------------------------------------------------


def _kron_periodic(d: int, n: np.ndarray) -> np.ndarray:
    """(d/n) for fundamental d (or d = 1), periodic in n modulo |d|."""
    if d == 1:
        return np.ones(n.shape)
    period = abs(d)
    table = np.array([kronecker(d, r) for r in range(period)], dtype=float)
    return table[n % period]


def _complex_pairs(tw: TwistedCharacter, N: int):
    """Norms and weights eps(alpha) (d/N alpha) Tr(alpha) over complex alpha with N alpha <= N.

    Returns integer norms ``n`` and float weights, one entry per (u, v) with
    u, v > 0.
    """
    D = tw.D
    char = tw.base
    norms, weights = [], []
    if D % 2:
        v = 1
        while D * v * v < 4 * N:
            umax = math.isqrt(4 * N - D * v * v)
            u = np.arange(2 - (v % 2), umax + 1, 2, dtype=np.int64)
            if len(u):
                eps = np.array([kronecker(2 * int(k), D) for k in u], dtype=float)
                n = (u * u + D * v * v) // 4
                norms.append(n)
                weights.append(eps * u)
            v += 1
    else:
        v = 1
        while 2 * v * v < N:
            umax = math.isqrt(N - 2 * v * v)
            u = np.arange(1, umax + 1, dtype=np.int64)
            table = np.array(char.eval_table[v % 4], dtype=float)
            eps = table[u % 8]
            n = u * u + 2 * v * v
            norms.append(n)
            weights.append(eps * 2.0 * u)
            v += 1
    if not norms:
        return np.zeros(0, dtype=np.int64), np.zeros(0)
    n = np.concatenate(norms)
    w = np.concatenate(weights) * _kron_periodic(tw.d, n)
    return n, w


def complex_tail_bound(tw: TwistedCharacter, N: int) -> float:
    """Bound on the part of C from complex ideals of norm > N.

    Each pair contributes at most w u f(a u^2 + b v^2) with x = a u^2 + b v^2
    > x_N = 2 pi N / B. Using f(x) < e^{-x} / x^2 < e^{-x_N/2} e^{-x/2} / x_N^2,
    sum_u u e^{-a u^2 / 2} < 1/a (Gaussian sum inequality with parameter 2/a)
    and sum_{v>=1} e^{-b v^2 / 2} < sqrt(pi / (2 b)).
    """
    B = tw.B
    if tw.D % 2:
        a, b, w = math.pi / (2 * B), math.pi * tw.D / (2 * B), 1.0
    else:
        a, b, w = TWO_PI / B, 2 * TWO_PI / B, 2.0
    xN = TWO_PI * N / B
    return w * math.exp(-xN / 2) / xN**2 / a * math.sqrt(math.pi / (2 * b))


def C_term(tw: TwistedCharacter, n_max: Optional[int] = None, tolerance: Optional[float] = None) -> SeriesResult:
    """Complex-ideal half: sum_{n <= N} a_n f(2 pi n / B)."""
    N = _resolve_n(n_max, tolerance, lambda k: complex_tail_bound(tw, k))
    n, w = _complex_pairs(tw, N)
    value, err = _weighted_sum(w, TWO_PI * n.astype(float) / tw.B)
    return SeriesResult(value, complex_tail_bound(tw, N), N, err)


def coefficient_a_n(tw: TwistedCharacter, n: int) -> int:
    """a_n: sum of chi over complex principal ideals of norm n (the pair alpha, conj(alpha) folded)."""
    if n < 1:
        raise ValueError("n must be positive")
    D = tw.D
    total = 0
    if D % 2:
        v = 1
        while D * v * v < 4 * n:
            u2 = 4 * n - D * v * v
            u = math.isqrt(u2)
            if u * u == u2 and (u - v) % 2 == 0:
                total += tw.base.epsilon(u, v) * u
            v += 1
    else:
        v = 1
        while 2 * v * v < n:
            u2 = n - 2 * v * v
            u = math.isqrt(u2)
            if u * u == u2:
                total += tw.base.epsilon(u, v) * 2 * u
            v += 1
    return kronecker(tw.d, n) * total


def central_derivative(tw: TwistedCharacter, tolerance: float = DEFAULT_TOLERANCE) -> EvaluationRecord:
    if tw.W != -1:
        raise RootNumberError(
            f"D={tw.D}, d={tw.d}: root number +1; the identity requires an odd functional equation"
        )
    R = R_term(tw, tolerance=tolerance)
    C = C_term(tw, tolerance=tolerance)
    return _record(tw, R, C)


def _record(tw: TwistedCharacter, R: SeriesResult, C: SeriesResult) -> EvaluationRecord:
    half = R.value + C.value
    return EvaluationRecord(
        D=tw.D,
        d=tw.d,
        B=tw.B,
        W=tw.W,
        R=R,
        C=C,
        lambda_prime=2.0 * half,
        l_prime=4.0 * math.pi / tw.B * half,
    )


def table_evaluation(tw: TwistedCharacter, r_terms: int = 7, c_terms: int = 50) -> EvaluationRecord:
    """Fixed-truncation evaluation (n^2 <= 50 for R, n <= 50 for C)."""
    return _record(tw, R_term(tw, n_max=r_terms), C_term(tw, n_max=c_terms))
