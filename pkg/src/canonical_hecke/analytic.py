"""Re-derivation of the constants in the lower bound for the Liouville sum.

The Liouville-weighted sum has Mellin form

    1/(2 pi i) int (x/2pi)^s Gamma(s)/(s-1)^2 zeta(4s-2)/zeta(2s-1) ds,

whose contour is shifted past the poles at s = 1 and s = 3/4 onto five
segments C1..C5. This module evaluates the two residues and the segment
integrals with its own complex Gamma and zeta.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy import integrate

_LN2 = math.log(2.0)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
# B_{2k} / (2k (2k-1)), k = 1..10
_STIRLING = (
    1.0 / 12,
    -1.0 / 360,
    1.0 / 1260,
    -1.0 / 1680,
    1.0 / 1188,
    -691.0 / 360360,
    1.0 / 156,
    -3617.0 / 122400,
    43867.0 / 244188,
    -174611.0 / 125400,
)

CONTOUR_HEIGHT = 7.0
C1_CUTOFF = 200.0

REFERENCE_CONSTANTS = {
    "res1": 0.523599,
    "res34": -0.845767,
    "C1": 5e-7,
    "C2": 2e-6,
    "C3": 2.48218,
}


class QuadratureError(RuntimeError):
    pass


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def loggamma(z: complex) -> complex:
    """A logarithm of Gamma(z); the real part is log|Gamma(z)| exactly, the branch of the imaginary part is arbitrary."""
    z = complex(z)
    if _is_pole(z):
        raise ValueError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return complex(math.log(math.pi)) - cmath.log(cmath.sin(math.pi * z)) - loggamma(1 - z)
    shift = 0j
    while abs(z) < 12 or z.real < 12:
        shift += cmath.log(z)
        z += 1
    zi = 1 / z
    zi2 = zi * zi
    series = 0j
    p = zi
    for c in _STIRLING:
        series += c * p
        p *= zi2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series - shift


def gamma_complex(z: complex) -> complex:
    return cmath.exp(loggamma(z))


def complex_gamma_abs(sigma: float, t: float) -> float:
    """|Gamma(sigma + i t)|."""
    return math.exp(loggamma(complex(sigma, t)).real)


def _expm1c(w: complex) -> complex:
    a, b = w.real, w.imag
    return complex(math.expm1(a) * math.cos(b) - 2 * math.sin(b / 2) ** 2, math.exp(a) * math.sin(b))


def _borwein_terms(t: float) -> int:
    # error below e^{-37} |1 - 2^{1-s}|^{-1} for sigma >= 1/2
    return int(math.ceil((math.pi * abs(t) / 2 + math.log(3 * (1 + 2 * abs(t))) + 37) / math.log(3 + math.sqrt(8)))) + 2


def _eta_borwein(s: complex) -> complex:
    """Dirichlet eta function by Borwein's accelerated alternating series."""
    n = _borwein_terms(s.imag)
    # log of n (n+i-1)! 4^i / ((n-i)! (2i)!) for i = 0..n, then cumulative sums d_k
    logs = []
    acc = math.log(n) + math.lgamma(n) - math.lgamma(n + 1)
    for i in range(n + 1):
        if i:
            acc += math.log(4.0 * (n + i - 1) * (n - i + 1) / ((2 * i) * (2 * i - 1)))
        logs.append(acc)
    top = max(logs)
    e = [math.exp(v - top) for v in logs]
    d = []
    running = 0.0
    for v in e:
        running += v
        d.append(running)
    dn = d[-1]
    total = 0j
    for k in range(n):
        c = (dn - d[k]) / dn
        term = c * cmath.exp(-s * math.log(k + 1))
        total += -term if k % 2 else term
    return total


def _zeta_right(s: complex) -> complex:
    """zeta(s) for Re s >= 1/2, s != 1."""
    factor = -_expm1c((1 - s) * _LN2)  # 1 - 2^{1-s}
    if factor == 0:
        raise ValueError(f"zeta: s={s} is the pole or a zero of 1 - 2^(1-s)")
    return _eta_borwein(s) / factor


def _zeta(s: complex) -> complex:
    if s == 0:
        return complex(-0.5)
    if s == 1:
        raise ValueError("zeta has a pole at s = 1")
    if s.real >= 0.5:
        return _zeta_right(s)
    # zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    w = 1 - s
    return (
        cmath.exp(s * _LN2 + (s - 1) * math.log(math.pi) + loggamma(w))
        * cmath.sin(math.pi * s / 2)
        * _zeta_right(w)
    )


def zeta_complex(sigma: float, t: float) -> complex:
    """zeta(sigma + i t) for sigma > 0."""
    if not sigma > 0:
        raise ValueError("zeta_complex needs sigma > 0; use the functional equation for the left half-plane")
    if sigma == 1 and t == 0:
        raise ValueError("zeta has a pole at s = 1")
    return _zeta(complex(sigma, t))


def zeta_extended(s: complex) -> complex:
    """zeta on the whole plane minus s = 1, via the functional equation for Re s < 1/2."""
    return _zeta(complex(s))


def residue_constants() -> tuple[float, float]:
    """Coefficients of x and x^{3/4} in the residues at s = 1 and s = 3/4."""
    res1 = math.pi / 6
    res34 = 2 ** 1.25 * gamma_complex(0.75).real / (math.pi**0.75 * zeta_complex(0.5, 0.0).real)
    return res1, res34


def _ratio(a: complex, b: complex) -> float:
    return abs(zeta_extended(a)) / abs(zeta_extended(b))


def _c1_integrand(t: float) -> float:
    return complex_gamma_abs(1.0, t) / t**2 * _ratio(complex(2, 4 * t), complex(1, 2 * t))


def _c2_integrand(sigma: float) -> float:
    return (
        (2 * math.pi) ** (-sigma)
        * complex_gamma_abs(sigma, CONTOUR_HEIGHT)
        / ((sigma - 1) ** 2 + CONTOUR_HEIGHT**2)
        * _ratio(complex(4 * sigma - 2, 4 * CONTOUR_HEIGHT), complex(2 * sigma - 1, 2 * CONTOUR_HEIGHT))
    )


def _c3_integrand(t: float) -> float:
    ratio = 1.0 if t == 0 else _ratio(complex(0, 4 * t), complex(0, 2 * t))
    return complex_gamma_abs(0.5, t) / (0.25 + t * t) * ratio


def c1_tail_bound(T: float = C1_CUTOFF) -> float:
    """Bound on (1/2pi) int_T^inf of the C1 integrand.

    |Gamma(1+it)|^2 = pi t / sinh(pi t) <= 2 pi t e^{-pi t} / (1 - e^{-2 pi t}),
    |zeta(2+4it)| <= zeta(2), and 1/|zeta(1+2it)| <= 1000 log(2t), looser than
    published explicit bounds. sqrt(t) log(2t) / t^2 decreases for t >= e.
    """
    prefactor = math.sqrt(2 * math.pi * T / (1 - math.exp(-2 * math.pi * T))) * math.pi**2 / 6 * 1000 * math.log(2 * T) / T**2
    return prefactor * (2 / math.pi) * math.exp(-math.pi * T / 2) / (2 * math.pi)


def _quad(func, a, b, limit, epsrel=1e-8, points=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            out = integrate.quad(func, a, b, epsabs=0.0, epsrel=epsrel, limit=limit, points=points, full_output=1)
        except ValueError as exc:  # limit too small for the break points
            raise QuadratureError(f"quadrature on [{a}, {b}] rejected: {exc}") from exc
    value, abserr, info = out[0], out[1], out[2]
    if len(out) > 3 or abserr > max(1e-3 * abs(value), 1e-300):
        msg = out[3].strip().splitlines()[0] if len(out) > 3 else "error estimate too large"
        raise QuadratureError(f"quadrature on [{a}, {b}] failed: {msg} (value={value}, err={abserr})")
    return value, abserr


@dataclass(frozen=True)
class ContourSegmentBound:
    segment: str
    computed_bound: float
    paper_coefficient: float
    scaling: str
    quad_error: float = 0.0

    @property
    def within_slack(self) -> bool:
        return self.computed_bound <= self.paper_coefficient * (1 + 1e-2)


def contour_segment_bound(segment: str, limit: int = 200) -> ContourSegmentBound:
    """Coefficient of x (C1, C2, C4, C5) or sqrt(x) (C3) in the segment integral bound."""
    seg = segment.upper()
    if seg in ("C1", "C5"):
        value, err = _quad(_c1_integrand, CONTOUR_HEIGHT, C1_CUTOFF, limit, points=[10.0, 15.0, 25.0, 40.0])
        bound = value / (2 * math.pi) + c1_tail_bound()
        return ContourSegmentBound(seg, bound, REFERENCE_CONSTANTS["C1"], "linear_x", err / (2 * math.pi))
    if seg in ("C2", "C4"):
        value, err = _quad(_c2_integrand, 0.5, 1.0, limit)
        return ContourSegmentBound(seg, value, REFERENCE_CONSTANTS["C2"], "linear_x", err)
    if seg == "C3":
        # the integrand is even in t
        value, err = _quad(_c3_integrand, 0.0, CONTOUR_HEIGHT, limit)
        scale = 2 / math.sqrt(2 * math.pi)
        return ContourSegmentBound(seg, value * scale, REFERENCE_CONSTANTS["C3"], "sqrt_x", err * scale)
    raise ValueError(f"unknown segment {segment!r}")


def contour_remainder_bound(x: float, segments: dict) -> float:
    """|1/(2 pi i) int over all five segments| <= this, given the segment coefficients."""
    lin = 2 * segments["C1"].computed_bound + 2 * segments["C2"].computed_bound
    return (lin * x + segments["C3"].computed_bound * math.sqrt(x)) / (2 * math.pi)
