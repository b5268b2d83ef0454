"""Exact integer arithmetic: Kronecker symbols, Liouville's function,
fundamental discriminants and class numbers of imaginary quadratic fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

ODD_3_MOD_8 = "odd_3_mod_8"
ODD_7_MOD_8 = "odd_7_mod_8"
EIGHT_DIVIDES = "eight_divides"


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    a, n = int(a), int(n)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if a % 2 == 0 and n % 2 == 0:
        return 0
    tz = (n & -n).bit_length() - 1
    n >>= tz
    if tz % 2 == 1 and a % 8 in (3, 5):
        result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_squarefree(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        if m % p == 0:
            m //= p
        p += 1 if p == 2 else 2
    return True


def is_fundamental_discriminant(d: int) -> bool:
    """True iff d (positive or negative, d != 1) is the discriminant of a quadratic field."""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def is_valid_discriminant(D: int) -> Tuple[bool, Optional[str]]:
    """Decide whether Q(sqrt(-D)) carries canonical Hecke characters.

    Requires -D fundamental, D > 4, and D = 3 (mod 4) or 8 | D. Returns
    ``(True, parity_class)`` on success, ``(False, None)`` otherwise.
    """
    if D <= 4 or not is_fundamental_discriminant(-D):
        return False, None
    if D % 8 == 0:
        return True, EIGHT_DIVIDES
    if D % 8 == 3:
        return True, ODD_3_MOD_8
    if D % 8 == 7:
        return True, ODD_7_MOD_8
    return False, None


@lru_cache(maxsize=64)
def _spf_table(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.arange(limit + 1)
    unset = spf == 0
    spf[unset] = idx[unset]
    spf.flags.writeable = False
    return spf


def smallest_prime_factors(n_max: int) -> np.ndarray:
    """Sieve of smallest prime factors on [0, n_max]; rounded up to a power of two for caching."""
    size = 1 << max(10, (int(n_max)).bit_length())
    return _spf_table(size)


def big_omega(n: int) -> int:
    if n < 1:
        raise ValueError(f"big_omega needs n >= 1, got {n}")
    if n <= (1 << 22):
        spf = smallest_prime_factors(n)
        count = 0
        while n > 1:
            n //= int(spf[n])
            count += 1
        return count
    count = 0
    p = 2
    while p * p <= n:
        while n % p == 0:
            n //= p
            count += 1
        p += 1 if p == 2 else 2
    return count + (1 if n > 1 else 0)


def liouville(n: int) -> int:
    """(-1)**Omega(n); raises ValueError for n < 1."""
    if n < 1:
        raise ValueError(f"liouville is defined for n >= 1, got {n}")
    return -1 if big_omega(n) % 2 else 1


def liouville_array(n_max: int) -> np.ndarray:
    """lambda(n) for n = 0..n_max (index 0 holds 0)."""
    spf = smallest_prime_factors(n_max)
    lam = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        lam[1] = 1
    for n in range(2, n_max + 1):
        lam[n] = -lam[n // spf[n]]
    return lam


def completely_multiplicative_array(values_at_primes: dict, n_max: int, default=None) -> np.ndarray:
    """Extend prime values to a completely multiplicative m(n), n = 0..n_max.

    Primes missing from ``values_at_primes`` take ``default(p)``, or -1
    (Liouville's value) when no default is given.
    """
    spf = smallest_prime_factors(n_max)
    m = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        m[1] = 1
    for n in range(2, n_max + 1):
        p = int(spf[n])
        if p in values_at_primes:
            mp_ = values_at_primes[p]
        else:
            mp_ = default(p) if default is not None else -1
        m[n] = mp_ * m[n // p]
    return m


def reduced_forms(D: int):
    """Reduced positive definite forms (a, b, c) with b^2 - 4ac = -D."""
    forms = []
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def class_number(D: int) -> int:
    """Class number of Q(sqrt(-D)) by counting reduced forms of discriminant -D."""
    if D <= 0 or not is_fundamental_discriminant(-D):
        raise ValueError(f"-{D} is not a fundamental discriminant")
    return len(reduced_forms(D))


@dataclass(frozen=True)
class FieldData:
    D: int
    h: int
    parity_class: str


def field_data(D: int) -> FieldData:
    ok, parity = is_valid_discriminant(D)
    if not ok:
        raise ValueError(f"D={D} does not admit canonical Hecke characters")
    return FieldData(D=D, h=class_number(D), parity_class=parity)


def sign(x: int) -> int:
    return (x > 0) - (x < 0)
