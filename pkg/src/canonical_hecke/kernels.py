"""The kernel f(x) = Gamma(0, x) / x and the exponential integral behind it.

``Gamma(0, x) = E1(x)`` is evaluated by its power series for ``x < 1`` and
by the classical continued fraction (modified Lentz) for ``x >= 1``. Every
evaluation carries an absolute error bound; see ``KernelValue``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

EULER_GAMMA = 0.57721566490153286061
EPS = np.finfo(float).eps
SWITCH = 1.0
# beyond this e^{-x} is subnormal and the value is reported as an underflow
UNDERFLOW_X = 700.0
_TINY = 1e-300
_MAX_CF_ITER = 500


@dataclass(frozen=True)
class KernelValue:
    value: float
    abs_error: float
    underflow: bool = False


def _series_e1(x: float, logx: float | None = None):
    """E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)."""
    if logx is None:
        logx = math.log(x)
    total = 0.0
    magnitude = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= -x / k
        piece = term / k
        total += piece
        magnitude += abs(piece)
        if abs(piece) <= EPS * 0.25 * max(abs(total), 1e-300) or k > 200 or piece == 0.0:
            break
    # terms decrease in modulus once k > x, so the tail is below the next term
    nxt = abs(term * x / (k + 1) / (k + 1))
    value = -EULER_GAMMA - logx - total
    err = nxt + 8 * EPS * (EULER_GAMMA + abs(logx) + magnitude + abs(value))
    return value, err


def _cf_scaled(x: float):
    """Continued fraction for e^x E1(x); returns (value, iterations)."""
    b = x + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_CF_ITER):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) <= EPS:
            return h, i
    raise ArithmeticError(f"continued fraction for E1({x}) did not converge")


def gamma0(x: float, method: str | None = None) -> KernelValue:
    """Gamma(0, x) = int_x^inf e^{-t} dt / t with an absolute error bound.

    ``method`` forces ``"series"`` or ``"cf"``; by default the series is used
    below ``SWITCH`` and the continued fraction above.
    """
    x = float(x)
    if not x > 0:
        raise ValueError(f"gamma0 needs x > 0, got {x}")
    if method is None:
        method = "series" if x < SWITCH else "cf"
    if method == "series":
        value, err = _series_e1(x)
        return KernelValue(value, err)
    if method != "cf":
        raise ValueError(f"unknown method {method!r}")
    if x > UNDERFLOW_X:
        return KernelValue(0.0, math.exp(-UNDERFLOW_X) / UNDERFLOW_X, underflow=True)
    scaled, iters = _cf_scaled(x)
    value = math.exp(-x) * scaled
    return KernelValue(value, (2 * iters + 16) * EPS * value)


def f_eval(x: float, method: str | None = None) -> KernelValue:
    """f(x) = Gamma(0, x) / x."""
    g = gamma0(x, method)
    x = float(x)
    value = g.value / x
    return KernelValue(value, g.abs_error / x + EPS * value, g.underflow)


def log_f(x: float) -> float:
    """log f(x), finite far past the range where f itself underflows."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"log_f needs x > 0, got {x}")
    if x < SWITCH:
        return math.log(_series_e1(x)[0] / x)
    scaled, _ = _cf_scaled(x)
    return -x + math.log(scaled) - math.log(x)


def f_array(x) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised f on a positive array; returns ``(values, abs_errors)``.

    Same branches and error model as ``f_eval``; arguments past
    ``UNDERFLOW_X`` return 0 with the underflow bound as error.
    """
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise ValueError("f_array needs positive arguments")
    val = np.empty_like(x)
    err = np.empty_like(x)

    lo = x < SWITCH
    if np.any(lo):
        xs = x[lo]
        total = np.zeros_like(xs)
        mag = np.zeros_like(xs)
        term = np.ones_like(xs)
        # x < 1: 24 terms leave a remainder below 1/(25*25!) ~ 6e-27
        for k in range(1, 25):
            term = term * (-xs / k)
            piece = term / k
            total += piece
            mag += np.abs(piece)
        nxt = np.abs(term * xs / 25.0 / 25.0)
        logx = np.log(xs)
        g = -EULER_GAMMA - logx - total
        gerr = nxt + 8 * EPS * (EULER_GAMMA + np.abs(logx) + mag + np.abs(g))
        val[lo] = g / xs
        err[lo] = gerr / xs + EPS * val[lo]

    mid = (~lo) & (x <= UNDERFLOW_X)
    if np.any(mid):
        xs = x[mid]
        b = xs + 1.0
        c = np.full_like(xs, 1.0 / _TINY)
        d = 1.0 / b
        h = d.copy()
        iters = np.zeros_like(xs)
        active = np.ones(xs.shape, dtype=bool)
        for i in range(1, _MAX_CF_ITER):
            an = -float(i * i)
            b = b + 2.0
            d = np.where(active, 1.0 / (an * d + b), d)
            c = np.where(active, b + an / c, c)
            delta = np.where(active, c * d, 1.0)
            h = h * delta
            iters = np.where(active, i, iters)
            active = active & (np.abs(delta - 1.0) > EPS)
            if not active.any():
                break
        else:
            raise ArithmeticError("vectorised continued fraction did not converge")
        g = np.exp(-xs) * h
        val[mid] = g / xs
        err[mid] = (2 * iters + 16) * EPS * g / xs + EPS * val[mid]

    hi = x > UNDERFLOW_X
    if np.any(hi):
        val[hi] = 0.0
        err[hi] = math.exp(-UNDERFLOW_X) / UNDERFLOW_X**2
    return val, err


def mellin_integral(s: float, epsabs: float = 1e-13, epsrel: float = 1e-13) -> float:
    """int_0^inf f(x) x^{s-1} dx by adaptive quadrature.

    On (0, 1] the substitution x = e^{-y} removes the logarithmic
    singularity of f at 0.
    """
    if not s > 1:
        raise ValueError("the Mellin integral of f converges only for s > 1")

    def head(y):
        # f(x) x^s with x = e^{-y}; x itself may underflow, log x does not
        return _series_e1(math.exp(-y), -y)[0] * math.exp(-(s - 1) * y)

    def tail(x):
        return f_eval(x).value * x ** (s - 1)

    a, _ = integrate.quad(head, 0.0, np.inf, epsabs=epsabs, epsrel=epsrel, limit=200)
    b, _ = integrate.quad(tail, 1.0, np.inf, epsabs=epsabs, epsrel=epsrel, limit=200)
    return a + b


def mellin_identity_check(s: float) -> float:
    """|int_0^inf f(x) x^{s-1} dx - Gamma(s)/(s-1)^2| for real s in (1, 4)."""
    if not 1 < s < 4:
        raise ValueError(f"s must lie in (1, 4), got {s}")
    target = math.gamma(s) / (s - 1) ** 2
    return abs(mellin_integral(s) - target)
