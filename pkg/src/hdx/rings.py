"""Coefficient rings: the integers, prime fields F_p, and integers mod n.

Ring elements are plain Python ints. Finite-ring values are kept reduced to
the range [0, n); the ring object owns the reduction and the sign rules, so
cochain code never needs to know which ring it is working over.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputFormatError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    """One of Z ('Z'), a prime field ('F'), or integers mod n ('Z/')."""

    kind: str
    modulus: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind != "Z"

    @property
    def is_field(self) -> bool:
        # Z/p with p prime behaves as a field; the spelling is kept apart.
        return self.kind == "F" or (self.kind == "Z/" and is_prime(self.modulus))

    @property
    def size(self) -> int:
        if not self.is_finite:
            raise InputFormatError("the integers are not finite")
        return self.modulus

    def reduce(self, v: int) -> int:
        if self.kind == "Z":
            return v
        return v % self.modulus

    def neg(self, v: int) -> int:
        return self.reduce(-v)

    def elements(self):
        return range(self.size)

    def __str__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "F":
            return f"F{self.modulus}"
        return f"Z/{self.modulus}"


INTEGERS = Ring("Z")


def prime_field(p: int) -> Ring:
    if not is_prime(p):
        raise InputFormatError(f"{p} is not prime")
    return Ring("F", p)


def modular_ring(n: int) -> Ring:
    if n < 2:
        raise InputFormatError(f"modulus {n} must be at least 2")
    return Ring("Z/", n)


def parse_ring(spec: str) -> Ring:
    """Parse 'Z', 'F<p>' or 'Z/<n>'."""
    s = spec.strip()
    if s == "Z":
        return INTEGERS
    if s.startswith("F"):
        try:
            p = int(s[1:])
        except ValueError:
            raise InputFormatError(f"bad ring spec {spec!r}") from None
        return prime_field(p)
    if s.startswith("Z/"):
        try:
            n = int(s[2:])
        except ValueError:
            raise InputFormatError(f"bad ring spec {spec!r}") from None
        return modular_ring(n)
    raise InputFormatError(f"bad ring spec {spec!r}")
