"""Exact arithmetic in the prime field F_p.

Residues are kept canonical in [0, p) throughout.  Provides extended-Euclid
inversion, Legendre symbols, Tonelli-Shanks square roots, bulk square-root
and inverse tables for enumeration loops, and deterministic primality
testing for census range validation.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "UnsupportedModulusError",
    "FieldElement",
    "is_prime",
    "require_prime",
    "primes_in_range",
    "xgcd",
    "inv_mod",
    "legendre",
    "sqrt_mod",
    "sqrt_table",
    "sqrt_array",
    "inverse_array",
]


class UnsupportedModulusError(ValueError):
    """The operation is not defined at this modulus (e.g. square roots at p = 2)."""


# Witness set making Miller-Rabin deterministic for all n < 3.3 * 10**24,
# which comfortably covers 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n below 2**64 (and well beyond)."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def require_prime(p: int) -> int:
    """Return p if prime, else raise ValueError."""
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in the inclusive range [lo, hi]."""
    lo = max(lo, 2)
    out = []
    if lo <= 2 <= hi:
        out.append(2)
    n = lo | 1  # first odd >= lo
    if n < 3:
        n = 3
    while n <= hi:
        if is_prime(n):
            out.append(n)
        n += 2
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, s, t) with g = gcd(a, b) = s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a mod p, via extended Euclid."""
    p = require_prime(p)
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"inverse of zero mod {p}")
    g, s, _ = xgcd(a, p)
    assert g == 1
    return s % p


def legendre(a: int, p: int) -> int:
    """Legendre symbol: 0 if a = 0, +1 if a is a nonzero square mod p, -1 otherwise."""
    p = require_prime(p)
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return 1  # the only nonzero residue is 1 = 1^2
    ls = pow(a, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def sqrt_mod(a: int, p: int) -> tuple[int, int] | None:
    """Square roots of a mod an odd prime p.

    Returns (r, p - r) with r the principal root (the smaller of the pair),
    (0, 0) for a = 0, or None when a is a quadratic non-residue.  Uses the
    p % 4 == 3 shortcut when available, Tonelli-Shanks otherwise.
    """
    p = require_prime(p)
    if p == 2:
        raise UnsupportedModulusError(
            "square roots mod 2 are unsupported; handle p = 2 by brute force"
        )
    a %= p
    if a == 0:
        return (0, 0)
    if legendre(a, p) == -1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q = p - 1
        s = 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            i = 0
            t2 = t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
    r = min(r, p - r)
    return (r, p - r)


def sqrt_table(p: int) -> dict[int, int]:
    """Map each quadratic residue mod an odd prime p to its principal root.

    The table has exactly (p - 1)//2 + 1 entries (zero plus the nonzero
    residues); principal root means min(r, p - r).
    """
    p = require_prime(p)
    if p == 2:
        raise UnsupportedModulusError("square-root table undefined for p = 2")
    return {r * r % p: r for r in range((p + 1) // 2)}


def sqrt_array(p: int) -> np.ndarray:
    """Length-p int64 array: principal square root per residue, -1 for non-residues."""
    p = require_prime(p)
    if p == 2:
        raise UnsupportedModulusError("square-root table undefined for p = 2")
    table = np.full(p, -1, dtype=np.int64)
    r = np.arange((p + 1) // 2, dtype=np.int64)
    table[(r * r) % p] = r
    return table


def inverse_array(p: int) -> np.ndarray:
    """Length-p int64 array of inverses mod p; entry 0 is a 0 sentinel.

    Built with the classic linear recurrence inv[a] = -(p // a) * inv[p % a].
    """
    p = require_prime(p)
    inv = [0] * p
    if p > 1:
        inv[1 % p] = 1 % p
    for a in range(2, p):
        inv[a] = (p - p // a) * inv[p % a] % p
    return np.array(inv, dtype=np.int64)


class FieldElement:
    """A canonical residue with its prime modulus.

    Binary operators accept another FieldElement with the same modulus, or a
    plain int (reduced mod p).  Mixing moduli raises ValueError.
    """

    __slots__ = ("residue", "modulus")

    def __init__(self, residue: int, modulus: int):
        self.modulus = require_prime(modulus)
        self.residue = int(residue) % self.modulus

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"mismatched moduli: {self.modulus} vs {other.modulus}"
                )
            return other
        if isinstance(other, (int, np.integer)):
            return FieldElement(int(other), self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.residue + other.residue, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.residue - other.residue, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(other.residue - self.residue, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.residue * other.residue, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        return FieldElement(pow(self.residue, exponent, self.modulus), self.modulus)

    def __neg__(self):
        return FieldElement(-self.residue, self.modulus)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.modulus == other.modulus
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"FieldElement({self.residue}, mod {self.modulus})"

    def inverse(self) -> "FieldElement":
        return FieldElement(inv_mod(self.residue, self.modulus), self.modulus)

    def legendre(self) -> int:
        return legendre(self.residue, self.modulus)

    def sqrt(self) -> tuple["FieldElement", "FieldElement"] | None:
        """Both square roots (principal first), or None for a non-residue."""
        roots = sqrt_mod(self.residue, self.modulus)
        if roots is None:
            return None
        return (
            FieldElement(roots[0], self.modulus),
            FieldElement(roots[1], self.modulus),
        )
