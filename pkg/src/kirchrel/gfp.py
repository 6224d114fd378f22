"""Arithmetic in the prime field F_p for odd primes p."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

# Elimination runs on int64 arrays; products of two residues must not overflow.
MAX_MODULUS = 2**31


class ModulusError(ValueError):
    """Raised for an invalid modulus or when operands live in different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def check_modulus(p: int) -> int:
    """Return ``p`` as an int if it is an odd prime below MAX_MODULUS, else raise."""
    if isinstance(p, Prime):
        return p.p
    p = int(p)
    if p == 2:
        raise ModulusError("p = 2 is not supported: characteristic 2 breaks the lossless test")
    if not is_prime(p):
        raise ModulusError(f"{p} is not prime")
    if p >= MAX_MODULUS:
        raise ModulusError(f"modulus {p} too large (must be < 2**31)")
    return p


@dataclass(frozen=True)
class Prime:
    p: int

    def __post_init__(self):
        object.__setattr__(self, "p", check_modulus(self.p))

    def __int__(self) -> int:
        return self.p

    def __call__(self, value: int) -> "FieldScalar":
        return FieldScalar(value, self)

    def elements(self):
        return [FieldScalar(v, self) for v in range(self.p)]


@dataclass(frozen=True)
class FieldScalar:
    value: int
    modulus: Prime

    def __post_init__(self):
        if not isinstance(self.modulus, Prime):
            object.__setattr__(self, "modulus", Prime(self.modulus))
        object.__setattr__(self, "value", int(self.value) % self.modulus.p)

    @property
    def p(self) -> int:
        return self.modulus.p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldScalar):
            if other.modulus != self.modulus:
                raise ModulusError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldScalar(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldScalar(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldScalar(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldScalar(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(-self.value, self.modulus)

    def inv(self) -> "FieldScalar":
        return FieldScalar(inv_mod(self.value, self.p), self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldScalar(inv_mod(v, self.p), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


# Functional spellings, handy when the operands are plain FieldScalars.
def add(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    return a + b


def sub(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    return a - b


def mul(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    return a * b


def neg(a: FieldScalar) -> FieldScalar:
    return -a


def inv(a: FieldScalar) -> FieldScalar:
    return a.inv()
