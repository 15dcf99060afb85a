"""
Exact arithmetic in Z[zeta], zeta a primitive cube root of unity.

Values a + b*zeta with zeta^2 = -1 - zeta. Every Walsh coefficient of a
ternary function lives here, so nothing in the package touches floating
point complex numbers.
"""

from dataclasses import dataclass
from typing import Tuple

try:
    from .errors import FieldError
except ImportError:
    from errors import FieldError


@dataclass(frozen=True)
class EisensteinInt:
    a: int = 0
    b: int = 0

    @classmethod
    def of(cls, value) -> "EisensteinInt":
        if isinstance(value, EisensteinInt):
            return value
        return cls(int(value), 0)

    def __add__(self, other):
        other = EisensteinInt.of(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-EisensteinInt.of(other))

    def __rsub__(self, other):
        return EisensteinInt.of(other) - self

    def __mul__(self, other):
        other = EisensteinInt.of(other)
        # (a + b z)(c + d z) with z^2 = -1 - z
        ac = self.a * other.a
        bd = self.b * other.b
        return EisensteinInt(ac - bd, self.a * other.b + self.b * other.a - bd)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("Negative powers are not defined in Z[zeta]")
        result = EisensteinInt(1, 0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "EisensteinInt":
        """Complex conjugation, the automorphism zeta -> zeta^2."""
        return EisensteinInt(self.a - self.b, -self.b)

    def galois_action(self, t: int) -> "EisensteinInt":
        t %= 3
        if t == 0:
            raise FieldError("Galois action is indexed by 1 or 2")
        return self if t == 1 else self.conj()

    @property
    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def exact_div(self, k: int) -> "EisensteinInt":
        if self.a % k or self.b % k:
            raise ValueError(f"{self} is not divisible by {k}")
        return EisensteinInt(self.a // k, self.b // k)

    def __int__(self):
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}ζ"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}ζ"


ZETA = EisensteinInt(0, 1)
ONE = EisensteinInt(1, 0)
SQRT_NEG3 = EisensteinInt(1, 2)

assert SQRT_NEG3 * SQRT_NEG3 == EisensteinInt(-3, 0)

_ZETA_POWERS = (ONE, ZETA, EisensteinInt(-1, -1))

UNITS: Tuple[EisensteinInt, ...] = tuple(s * z for s in (1, -1) for z in _ZETA_POWERS)


def zeta_power(c: int) -> EisensteinInt:
    return _ZETA_POWERS[c % 3]


def from_counts(c0: int, c1: int, c2: int) -> EisensteinInt:
    """c0 + c1*zeta + c2*zeta^2 reduced to the a + b*zeta basis."""
    return EisensteinInt(c0 - c2, c1 - c2)


def quadratic_character(t: int) -> int:
    t %= 3
    if t == 0:
        raise FieldError("Quadratic character is undefined at 0")
    return 1 if t == 1 else -1


def conjugate_pair_sum(e: int, c: int) -> int:
    """
    Sum over t in {1, 2} of sigma_t((sqrt(-3))^e * zeta^c).

    Rational by construction. Even e gives (-3)^(e/2) times 2 or -1, odd e
    gives (-3)^((e+1)/2) times the quadratic character of c (zero at c = 0).
    """
    c %= 3
    if e % 2 == 0:
        return (-3) ** (e // 2) * (2 if c == 0 else -1)
    if c == 0:
        return 0
    return (-3) ** ((e + 1) // 2) * quadratic_character(c)
