"""Exact base fields: the rationals and prime fields F_p.

Field elements are plain Python values (fractions.Fraction for Q, ints in
[0, p) for F_p); a Field instance supplies the arithmetic. Keeping
elements primitive makes equality, hashing and serialization free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ConstraintViolated, ParseError

Scalar = Union[Fraction, int]

#: moduli are confined to machine-word-friendly range
MAX_MODULUS = 1 << 61

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (p is None) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if not (2 <= self.p < MAX_MODULUS):
                raise ConstraintViolated(f"prime modulus must satisfy 2 <= p < 2^61, got {self.p}")
            if not is_prime(self.p):
                raise ConstraintViolated(f"{self.p} is not prime")

    # -- basic queries ------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F:{self.p}"

    # -- element construction -----------------------------------------

    def make(self, x: int | Fraction) -> Scalar:
        """Normalize a Python int or Fraction into this field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ConstraintViolated(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    # -- arithmetic ----------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.p is None else (-a) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    # -- parsing / printing -------------------------------------------

    def to_str(self, a: Scalar) -> str:
        return str(a)

    def parse(self, text: str) -> Scalar:
        """Parse an integer, or a '/'-separated fraction over Q."""
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return self.make(Fraction(int(num), int(den)))
            return self.make(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar literal {text!r}: {exc}") from None

    def random(self, rng) -> Scalar:
        if self.p is None:
            return Fraction(rng.randint(-50, 50))
        return rng.randrange(self.p)

    def random_nonzero(self, rng) -> Scalar:
        if self.p is None:
            n = rng.randint(1, 50)
            return Fraction(n if rng.random() < 0.5 else -n)
        return rng.randint(1, self.p - 1)


#: shared instance of the rationals
RATIONALS = Field(None)


def prime_field(p: int) -> Field:
    return Field(p)


def field_from_str(text: str) -> Field:
    """Inverse of str(field): 'Q' or 'F:p'."""
    text = text.strip()
    if text == "Q":
        return RATIONALS
    if text.startswith("F:"):
        try:
            return Field(int(text[2:]))
        except ValueError:
            raise ParseError(f"bad field spec {text!r}") from None
    raise ParseError(f"bad field spec {text!r} (expected 'Q' or 'F:p')")
