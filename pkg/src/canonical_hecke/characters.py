"""Canonical Hecke characters of Q(sqrt(-D)) and their quadratic twists.

A canonical character sends a principal ideal alpha*O to eps(alpha)*alpha,
where eps is a quadratic character on (O/f)^*. Elements are stored as
integer pairs (u, v):

* odd D:  alpha = (u + v sqrt(-D)) / 2 with u = v (mod 2)
* D = 8:  alpha = u + v sqrt(-2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Tuple

from .arith import (
    EIGHT_DIVIDES,
    is_fundamental_discriminant,
    is_valid_discriminant,
    kronecker,
    sign,
)

# eps(u + v sqrt(-2)) for the root-number -1 family, rows v mod 4, columns u mod 8
_CHART_D8 = (
    (0, 1, 0, 1, 0, -1, 0, -1),
    (0, -1, 0, -1, 0, 1, 0, 1),
    (0, -1, 0, -1, 0, 1, 0, 1),
    (0, -1, 0, -1, 0, 1, 0, 1),
)


class UnsupportedDiscriminant(ValueError):
    """Raised for even D other than 8, whose conductor data is not available."""


@dataclass(frozen=True)
class HalfIntegerElement:
    u: int
    v: int

    def norm(self, D: int) -> int:
        if D % 2:
            return (self.u * self.u + D * self.v * self.v) // 4
        return self.u * self.u + (D // 4) * self.v * self.v


@dataclass(frozen=True)
class CanonicalCharacter:
    D: int
    family_sign: int
    eval_table: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, repr=False)

    @property
    def root_number(self) -> int:
        """Root number of the untwisted family."""
        if self.D % 2:
            return kronecker(2, self.D)
        return self.family_sign

    def epsilon(self, u: int, v: int) -> int:
        if self.D % 2:
            if (u - v) % 2:
                raise ValueError(f"(u, v) = ({u}, {v}) violates u = v (mod 2) for odd D")
            return kronecker(2 * u, self.D)
        return self.eval_table[v % 4][u % 8]


def build_canonical(D: int, family_sign: int = -1) -> CanonicalCharacter:
    """Build the canonical character of Q(sqrt(-D)).

    Odd D has a single family, ``eps((u + v sqrt(-D))/2) = (2u / D)``, and
    ``family_sign`` is ignored. For D = 8 the two families differ by the
    sign of eps on 1 + sqrt(-2), which equals the root number.
    """
    ok, parity = is_valid_discriminant(D)
    if not ok:
        raise ValueError(f"D={D} does not admit canonical Hecke characters")
    if D % 2:
        return CanonicalCharacter(D=D, family_sign=kronecker(2, D))
    if D != 8:
        raise UnsupportedDiscriminant(
            f"D={D}: canonical characters are implemented for D=8 only among even D"
        )
    if family_sign not in (-1, 1):
        raise ValueError("family_sign must be +1 or -1")
    if family_sign == -1:
        table = _CHART_D8
    else:
        # (-1)^v is trivial on (Z/8)^* and -1 on 1 + sqrt(-2)
        table = tuple(tuple(x * (-1) ** v for x in row) for v, row in enumerate(_CHART_D8))
    assert parity == EIGHT_DIVIDES
    return CanonicalCharacter(D=8, family_sign=family_sign, eval_table=table)


def epsilon_eval(char: CanonicalCharacter, elem: HalfIntegerElement) -> int:
    return char.epsilon(elem.u, elem.v)


def rational_element(char: CanonicalCharacter, n: int) -> HalfIntegerElement:
    """The element n of Z inside O in (u, v) coordinates."""
    return HalfIntegerElement(2 * n, 0) if char.D % 2 else HalfIntegerElement(n, 0)


@dataclass(frozen=True)
class TwistedCharacter:
    base: CanonicalCharacter
    d: int
    B: int
    W: int

    @property
    def D(self) -> int:
        return self.base.D


def twist(char: CanonicalCharacter, d: int) -> TwistedCharacter:
    """Twist by eps_d o N. d = 1 gives the canonical character itself.

    B = D|d| (odd D) or 2D|d| (D = 8). The root number is (2/D) sign(d) for
    odd D and family_sign * sign(d) for D = 8.
    """
    d = int(d)
    if d != 1 and not is_fundamental_discriminant(d):
        raise ValueError(f"d={d} is not a fundamental discriminant")
    if gcd(d, char.D) != 1:
        raise ValueError(f"gcd(d={d}, D={char.D}) != 1")
    D = char.D
    B = D * abs(d) if D % 2 else 2 * D * abs(d)
    W = char.root_number * sign(d)
    return TwistedCharacter(base=char, d=d, B=B, W=W)


def rational_epsilon(tw: TwistedCharacter, n: int) -> int:
    """Character value on the real ideal nO divided by n.

    The twist enters through eps_d(N(nO)) = (d/n)^2, i.e. only as a
    coprimality condition.
    """
    return kronecker(-tw.D, n) * kronecker(tw.d, n) ** 2
