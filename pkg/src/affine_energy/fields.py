"""Exact field backends: prime fields F_p (odd p) and arbitrary-precision rationals.

Both backends sit behind the same small interface so the rest of the package
never branches on the field kind.  Raw representatives are plain hashable
Python values: an int residue in [0, p) for F_p, a reduced Fraction for Q.
The Scalar wrapper carries the field reference and supports operators; hot
counting loops work on the raw values directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotInField, ParseError, ZeroDenominator, ZeroInverse

Raw = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface; concrete backends are PrimeField and RationalField."""

    characteristic: int

    def reduce(self, value) -> Raw:
        raise NotImplementedError

    def add(self, x: Raw, y: Raw) -> Raw:
        raise NotImplementedError

    def sub(self, x: Raw, y: Raw) -> Raw:
        raise NotImplementedError

    def mul(self, x: Raw, y: Raw) -> Raw:
        raise NotImplementedError

    def neg(self, x: Raw) -> Raw:
        raise NotImplementedError

    def inv(self, x: Raw) -> Raw:
        raise NotImplementedError

    def div(self, x: Raw, y: Raw) -> Raw:
        return self.mul(x, self.inv(y))

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.reduce(value))

    def zero(self) -> "Scalar":
        return Scalar(self, self.reduce(0))

    def one(self) -> "Scalar":
        return Scalar(self, self.reduce(1))

    def render(self, x: Raw) -> str:
        """Text form accepted back by parse_scalar."""
        raise NotImplementedError

    def sort_key(self, x: Raw):
        """Total order on raw values, used for canonical report ordering."""
        return x


@dataclass(frozen=True)
class PrimeField(Field):
    """F_p for an odd prime p < 2^63; residues are ints in [0, p)."""

    p: int

    def __post_init__(self):
        if self.p < 3 or self.p >= 2**63 or not _is_prime(self.p):
            raise ParseError(f"field order must be an odd prime < 2^63, got {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    def reduce(self, value) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise NotInField(f"denominator {value.denominator} vanishes mod {self.p}")
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return int(value) % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroInverse("0 has no inverse")
        return pow(x, -1, self.p)

    def render(self, x) -> str:
        return str(x)

    def __repr__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class RationalField(Field):
    """Q with arbitrary-precision reduced fractions."""

    @property
    def characteristic(self) -> int:
        return 0

    def reduce(self, value) -> Fraction:
        return Fraction(value)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroInverse("0 has no inverse")
        return 1 / Fraction(x)

    def render(self, x) -> str:
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def __repr__(self):
        return "Q"


RATIONALS = RationalField()


@dataclass(frozen=True)
class Scalar:
    """Field element in canonical form; hashable, immutable, exact."""

    field: Field
    value: Raw

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __str__(self):
        return self.field.render(self.value)

    def __repr__(self):
        return f"{self.field.render(self.value)}@{self.field!r}"


def field_inv(x: Scalar) -> Scalar:
    """Multiplicative inverse; raises ZeroInverse on x = 0."""
    return x.inv()


def parse_scalar(text: str, field: Field) -> Scalar:
    """Parse a decimal integer or "num/den" literal into a canonical Scalar.

    Integers reduce mod p over F_p.  "num/den" is rejected with
    ZeroDenominator when den = 0 and with NotInField when den vanishes in the
    target prime field.
    """
    text = text.strip()
    if "/" in text:
        parts = text.split("/")
        if len(parts) != 2:
            raise ParseError(f"malformed fraction literal {text!r}")
        try:
            num, den = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"malformed fraction literal {text!r}") from exc
        if den == 0:
            raise ZeroDenominator(f"zero denominator in {text!r}")
        return field.scalar(Fraction(num, den))
    try:
        n = int(text)
    except ValueError as exc:
        raise ParseError(f"malformed integer literal {text!r}") from exc
    return field.scalar(n)


def parse_field(text: str) -> Field:
    """Field declaration syntax: "Q" or "Fp:<prime>"."""
    text = text.strip()
    if text in ("Q", "q"):
        return RATIONALS
    if text.lower().startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError as exc:
            raise ParseError(f"malformed field spec {text!r}") from exc
        return PrimeField(p)
    raise ParseError(f"unknown field spec {text!r} (expected Q or Fp:<prime>)")
