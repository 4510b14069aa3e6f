"""Exact norm values and valued base fields.

A norm value is either zero or a formal power ``g^q`` of a fixed base
``g > 1`` with rational exponent ``q``.  This set is totally ordered and
closed under multiplication, division and max/min, which is what every
downstream construction (subspace norms, quotient norms, operator norms,
attained infima) actually uses.  No floating point anywhere.

Fields come with an exact absolute value into magnitudes:

* rationals with the p-adic absolute value, ``|x| = g^(-v_p(x))``;
* rationals with the trivial absolute value;
* prime fields F_p with the trivial absolute value.

Field elements are plain Python values (``Fraction`` or small ints); the
field object supplies the arithmetic, so matrices stay lightweight.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator


# ---------------------------------------------------------------------------
# Magnitudes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Magnitude:
    """Zero or ``g^exponent`` for a rational exponent; totally ordered."""

    exponent: Fraction | None  # None encodes the zero magnitude

    @staticmethod
    def zero() -> "Magnitude":
        return Magnitude(None)

    @staticmethod
    def of(exponent) -> "Magnitude":
        return Magnitude(Fraction(exponent))

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def _key(self):
        if self.exponent is None:
            return (0, Fraction(0))
        return (1, self.exponent)

    def __lt__(self, other: "Magnitude") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "Magnitude") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "Magnitude") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "Magnitude") -> bool:
        return self._key() >= other._key()

    def __mul__(self, other: "Magnitude") -> "Magnitude":
        if self.exponent is None or other.exponent is None:
            return MAG_ZERO
        return Magnitude(self.exponent + other.exponent)

    def __truediv__(self, other: "Magnitude") -> "Magnitude":
        if other.exponent is None:
            raise ZeroDivisionError("division of a magnitude by zero")
        if self.exponent is None:
            return MAG_ZERO
        return Magnitude(self.exponent - other.exponent)

    def __repr__(self) -> str:
        return f"Magnitude({format_magnitude(self)!r})"


MAG_ZERO = Magnitude(None)
MAG_ONE = Magnitude(Fraction(0))


def mag_compare(a: Magnitude, b: Magnitude) -> int:
    """-1, 0 or 1 according to the total order on magnitudes."""
    ka, kb = a._key(), b._key()
    return (ka > kb) - (ka < kb)


def mag_mul(a: Magnitude, b: Magnitude) -> Magnitude:
    return a * b


def format_magnitude(m: Magnitude) -> str:
    """Text form: ``0`` or ``g^<rational>`` with the exponent in lowest terms."""
    if m.is_zero:
        return "0"
    return f"g^{m.exponent}"


def parse_magnitude(text: str) -> Magnitude:
    """Inverse of :func:`format_magnitude`; raises ``ValueError`` on junk."""
    s = text.strip()
    if s == "0":
        return MAG_ZERO
    if not s.startswith("g^"):
        raise ValueError(f"magnitude must be '0' or 'g^<rational>', got {text!r}")
    return Magnitude(Fraction(s[2:]))


# ---------------------------------------------------------------------------
# Valued fields
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def padic_valuation(n: int, p: int) -> int:
    """Largest k with p^k dividing n; undefined (raises) at n = 0."""
    if n == 0:
        raise ZeroDivisionError("valuation of zero is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


class ValuedField(ABC):
    """Arithmetic plus an exact absolute value on an exactly-representable field.

    Elements are plain values; all operations go through the field object.
    Implementations are immutable and hashable so spaces over them compare
    by value.
    """

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def sub(self, a, b): ...

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def div(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    @abstractmethod
    def is_zero(self, a) -> bool: ...

    @abstractmethod
    def abs_value(self, a) -> Magnitude: ...

    @abstractmethod
    def parse_element(self, text: str): ...

    @abstractmethod
    def format_element(self, a) -> str: ...

    @abstractmethod
    def random_element(self, rng, allow_zero: bool = True): ...

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    @property
    def finite(self) -> bool:
        return False

    def elements(self) -> Iterator[Any]:
        raise NotImplementedError(f"{self!r} is not enumerable")


class _RationalOps:
    """Shared Fraction arithmetic for the two rational-backed fields."""

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def parse_element(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def format_element(self, a) -> str:
        return str(Fraction(a))


@dataclass(frozen=True)
class PAdicRationals(_RationalOps, ValuedField):
    """Rationals with the p-adic absolute value ``|x| = g^(-v_p(x))``."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p-adic base must be prime, got {self.p}")

    def abs_value(self, a) -> Magnitude:
        a = Fraction(a)
        if a == 0:
            return MAG_ZERO
        v = padic_valuation(a.numerator, self.p) - padic_valuation(a.denominator, self.p)
        return Magnitude.of(-v)

    def random_element(self, rng, allow_zero: bool = True) -> Fraction:
        if allow_zero and rng.random() < 0.15:
            return Fraction(0)
        # unit prime to p, shifted by a random power of p for varied valuations
        unit = 0
        while unit % self.p == 0:
            unit = rng.randint(1, 9)
        if rng.random() < 0.5:
            unit = -unit
        k = rng.randint(-3, 3)
        if k >= 0:
            return Fraction(unit * self.p**k)
        return Fraction(unit, self.p**(-k))


@dataclass(frozen=True)
class TrivialRationals(_RationalOps, ValuedField):
    """Rationals with the trivial absolute value (1 on every non-zero element)."""

    def abs_value(self, a) -> Magnitude:
        return MAG_ZERO if a == 0 else MAG_ONE

    def random_element(self, rng, allow_zero: bool = True) -> Fraction:
        lo = 0 if allow_zero else 1
        num = rng.randint(lo, 6)
        if num and rng.random() < 0.5:
            num = -num
        return Fraction(num, rng.randint(1, 4))


@dataclass(frozen=True)
class PrimeField(ValuedField):
    """F_p with the trivial absolute value; elements are ints in [0, p)."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"field order must be prime, got {self.p}")

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def abs_value(self, a) -> Magnitude:
        return MAG_ZERO if a % self.p == 0 else MAG_ONE

    def parse_element(self, text: str) -> int:
        value = int(text.strip())
        if not 0 <= value < self.p:
            raise ValueError(f"element {value} out of range for F_{self.p}")
        return value

    def format_element(self, a) -> str:
        return str(a % self.p)

    def random_element(self, rng, allow_zero: bool = True) -> int:
        return rng.randrange(0 if allow_zero else 1, self.p)

    @property
    def finite(self) -> bool:
        return True

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))
