"""Explicit bounds R > |C| and the resulting non-vanishing verdicts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from .arith import (
    EIGHT_DIVIDES,
    class_number,
    completely_multiplicative_array,
    is_valid_discriminant,
    kronecker,
    sign,
)
from .characters import UnsupportedDiscriminant, build_canonical, twist
from .kernels import log_f
from .lseries import (
    DEFAULT_TOLERANCE,
    EvaluationRecord,
    RootNumberError,
    SeriesResult,
    central_derivative,
    multiplicative_sum,
)

R_MAIN, R_34, R_HALF = 0.5235, 0.8458, 0.3951
C_ODD, C_EVEN = 0.0269, 0.2369
# below these the bound chain does not close; the table covers D = 8, 11
CHAIN_MIN_ODD, CHAIN_MIN_EVEN = 19, 24
# direct certification asks for |Lambda'| >= CERT_FACTOR * (error bound)
CERT_FACTOR = 10.0

BOUND_CHAIN = "bound_chain"
DIRECT_TABLE = "direct_table"


class RootNumberPlus(RootNumberError):
    """W = +1: the central value case, outside this package."""

    def __init__(self, msg: str, rank_note: Optional[int] = None):
        super().__init__(msg)
        self.rank_note = rank_note


def r_lower_bound(B: float) -> float:
    """.5235 B - .8458 B^{3/4} - .3951 B^{1/2}, a lower bound for R valid for B > 1."""
    if not B > 1:
        raise ValueError(f"the lower bound for R holds for B > 1, got {B}")
    return R_MAIN * B - R_34 * B**0.75 - R_HALF * math.sqrt(B)


def c_trivial_bound(D: int, parity: str) -> float:
    """Upper bound for |C| of the untwisted character (d = 1, D >= 7)."""
    if D < 7:
        raise ValueError("the trivial bound on C needs D >= 7")
    if parity in ("even", EIGHT_DIVIDES):
        return C_EVEN * D
    if parity in ("odd", "odd_3_mod_8", "odd_7_mod_8"):
        return C_ODD * D
    raise ValueError(f"unknown parity {parity!r}")


def trivial_bound_constants() -> Dict[str, float]:
    """Intermediate constants of the term-wise bound on |C|.

    odd D:  |C| <= (4/pi^2) S_odd sum_u u e^{-pi u^2/(2D)} < (4/pi^2) S_odd D/pi
    even D: |C| <  (32/pi^2) S_all sum_u u e^{-pi u^2/D}  < (32/pi^2) S_all D/(2 pi)
    with S_odd = sum_{v odd} v^-4 e^{-pi v^2/2}, S_all = sum_{v>=1} v^-4 e^{-pi v^2/4}.
    """
    s_odd = math.fsum(v**-4.0 * math.exp(-math.pi * v * v / 2) for v in range(1, 40, 2))
    s_all = math.fsum(v**-4.0 * math.exp(-math.pi * v * v / 4) for v in range(1, 40))
    odd_pref = 4 / math.pi**2 * s_odd
    even_pref = 32 / math.pi**2 * s_all
    return {
        "inner_odd_sum": s_odd,
        "odd_prefactor": odd_pref,
        "odd_coefficient": odd_pref / math.pi,
        "even_prefactor": even_pref,
        "even_coefficient": even_pref / (2 * math.pi),
    }


def poisson_gaussian_sum_check(a: float) -> tuple[float, float]:
    """(sum_{n>=1} n e^{-n^2/a}, a/2); the first is always the smaller."""
    if not a > 0:
        raise ValueError("a must be positive")
    n_max = int(math.ceil(math.sqrt(a * 750))) + 1
    n = np.arange(1, n_max + 1, dtype=float)
    lhs = math.fsum(n * np.exp(-n * n / a))
    return lhs, a / 2


def sign_assignment_sum(signs: Dict[int, int], x: float, tolerance: float = 1e-13) -> SeriesResult:
    """sum m(n) n f(2 pi n^2/x) for m completely multiplicative, m(p) = signs.get(p, -1)."""
    for p, s in signs.items():
        if s not in (-1, 0, 1):
            raise ValueError(f"m({p}) = {s} is not in {{-1, 0, 1}}")
    return multiplicative_sum(lambda N: completely_multiplicative_array(signs, N)[1:], x, tolerance=tolerance)


def multiplicative_monotonicity_check(
    m1_signs: Dict[int, int], m2_signs: Dict[int, int], x: float, tolerance: float = 1e-13
) -> bool:
    """True iff the m1 sum is at least the m2 sum, up to the certified errors.

    Primes absent from an assignment take Liouville's value -1.
    """
    for p in set(m1_signs) | set(m2_signs):
        if m1_signs.get(p, -1) < m2_signs.get(p, -1):
            raise ValueError(f"ordering violated at p={p}")
    s1 = sign_assignment_sum(m1_signs, x, tolerance)
    s2 = sign_assignment_sum(m2_signs, x, tolerance)
    return bool(s1.value >= s2.value - (s1.total_error + s2.total_error))


def short_range_positivity_check(x: float, terms: int = 60) -> tuple[float, float]:
    """Logs of f(2 pi/x) and of sum_{n>=2} n f(2 pi n^2/x), robust to underflow.

    ``terms`` bounds the summation; beyond n = 60 the terms are below
    e^{-1000} times the first one for x < 20.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    lhs = log_f(2 * math.pi / x)
    logs = np.array([math.log(n) + log_f(2 * math.pi * n * n / x) for n in range(2, terms + 1)])
    top = logs.max()
    rhs = top + math.log(math.fsum(np.exp(logs - top)))
    return lhs, rhs


@dataclass(frozen=True)
class VerdictReport:
    D: int
    d: int
    family: int
    B: int
    W: int
    h: int
    r_lower: Optional[float]
    c_upper: Optional[float]
    method: str
    nonvanishing: bool
    rank_prediction: Optional[int]
    computed: Optional[EvaluationRecord] = None
    # R >= r_lower and |C| <= c_upper on the computed values, when both exist
    sound: Optional[bool] = None


def root_number(D: int, d: int = 1, family_sign: int = -1) -> int:
    base = kronecker(2, D) if D % 2 else family_sign
    return base * sign(d)


def certified_nonzero(rec: EvaluationRecord) -> bool:
    return bool(abs(rec.lambda_prime) >= CERT_FACTOR * rec.lambda_prime_error)


def verdict(
    D: int,
    d: int = 1,
    family_sign: int = -1,
    tolerance: float = DEFAULT_TOLERANCE,
    direct: bool = True,
) -> VerdictReport:
    """Decide Lambda'(1, chi_{D,d}) != 0.

    d = 1 uses the bound chain r_lower(B) > c_trivial(D) where it closes and
    falls back to certified direct evaluation otherwise. Twists are always
    certified by direct evaluation. ``direct=False`` skips the evaluation when
    the bound chain already decides.
    """
    ok, parity = is_valid_discriminant(D)
    if not ok:
        raise ValueError(f"D={D} does not admit canonical Hecke characters")
    family = kronecker(2, D) if D % 2 else family_sign
    W = family * sign(d)
    if W != -1:
        raise RootNumberPlus(
            f"D={D}, d={d}: root number +1 (central-value case); nothing to certify",
            rank_note=0 if d == 1 else None,
        )
    h = class_number(D)
    B = (D if D % 2 else 2 * D) * abs(d)
    r_lower = r_lower_bound(B)

    record = None
    if d == 1:
        c_upper = c_trivial_bound(D, parity)
        chain = r_lower > c_upper
        if direct or not chain:
            try:
                record = central_derivative(twist(build_canonical(D, family_sign), 1), tolerance)
            except UnsupportedDiscriminant:
                if not chain:
                    raise
        if chain:
            method, nonvanishing = BOUND_CHAIN, True
        else:
            method, nonvanishing = DIRECT_TABLE, certified_nonzero(record)
    else:
        c_upper = None
        record = central_derivative(twist(build_canonical(D, family_sign), d), tolerance)
        method, nonvanishing = DIRECT_TABLE, certified_nonzero(record)

    sound = None
    if record is not None and c_upper is not None:
        err = max(record.R.total_error, record.C.total_error)
        sound = bool(record.R.value >= r_lower - err and abs(record.C.value) <= c_upper + err)

    return VerdictReport(
        D=D,
        d=d,
        family=family,
        B=B,
        W=W,
        h=h,
        r_lower=r_lower,
        c_upper=c_upper,
        method=method,
        nonvanishing=nonvanishing,
        rank_prediction=h if (d == 1 and nonvanishing) else None,
        computed=record,
        sound=sound,
    )
