"""Prime field arithmetic.

A :class:`PrimeField` is an explicit context object carrying the modulus.
Scalars are :class:`FieldElement` values bound to one field; mixing
moduli raises :class:`ModulusMismatch`.

Containers elsewhere in the package (matrices, polynomials, shares) store
plain residues ``0 <= v < p`` next to a field reference, and use the
int-level helpers on :class:`PrimeField` in their inner loops.
"""

from __future__ import annotations

from typing import Iterator, Union

from .errors import ModulusMismatch, NotPrime, ZeroInverse

MAX_MODULUS = 1 << 61

# Deterministic Miller-Rabin witnesses, exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class PrimeField:
    """The field Z_p for a prime ``p < 2**61``."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if p >= MAX_MODULUS:
            raise NotPrime(f"modulus {p} exceeds the supported bound 2^61")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __call__(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        return FieldElement(int(value) % self.p, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.p):
            yield FieldElement(v, self)

    def random(self, rng) -> "FieldElement":
        return FieldElement(rng.randrange(self.p), self)

    def check(self, a: "FieldElement") -> None:
        if a.field.p != self.p:
            raise ModulusMismatch(f"element of F_{a.field.p} used in F_{self.p}")

    # Residue-level helpers. Inputs are ints, outputs are reduced ints.

    def reduce(self, a) -> int:
        if isinstance(a, FieldElement):
            self.check(a)
            return a.value
        return int(a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.p}")
        # extended Euclid
        r0, r1, s0, s1 = self.p, a, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return s0 % self.p

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        p = self.p
        base, acc = a % p, 1
        while e:
            if e & 1:
                acc = acc * base % p
            base = base * base % p
            e >>= 1
        return acc % p


class FieldElement:
    """An immutable residue bound to a :class:`PrimeField`."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        object.__setattr__(self, "value", int(value) % field.p)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ModulusMismatch(
                    f"cannot combine F_{self.field.p} and F_{other.field.p} elements"
                )
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _new(self, v: int) -> "FieldElement":
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * self.field.inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o * self.field.inv(self.value))

    def __neg__(self) -> "FieldElement":
        return self._new(-self.value)

    def __pow__(self, e: int) -> "FieldElement":
        return power(self, e)

    def inverse(self) -> "FieldElement":
        return inverse(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.field.p == self.field.p and other.value == self.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, p={self.field.p})"

    def __str__(self) -> str:
        return str(self.value)


def inverse(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises :class:`ZeroInverse` for zero."""
    return FieldElement(a.field.inv(a.value), a.field)


def power(a: FieldElement, e: int) -> FieldElement:
    """``a**e`` by square-and-multiply, with ``0**0 == 1``."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return FieldElement(a.field.pow(a.value, e), a.field)
