"""The Markoff surface x1^2 + x2^2 + x3^2 = 3*x1*x2*x3 over F_p.

Vertices of the move graph are the nonzero solutions.  Fixing two
coordinates makes the equation a quadratic in the third, whose two roots
sum to 3 times the product of the fixed pair; swapping a coordinate for
the other root of its quadratic is a Vieta move.  This module provides the
vertex predicate, the three moves, dense vertex codes, and two independent
enumerators: a fast fiber solver and an O(p^3) brute-force oracle.
"""

from __future__ import annotations

import numba
import numpy as np

from .prime_field import UnsupportedModulusError, inv_mod, require_prime, sqrt_array

__all__ = [
    "MOVES",
    "InvalidVertexError",
    "OracleBoundError",
    "MarkoffTriple",
    "is_vertex",
    "vieta",
    "neighbors",
    "encode",
    "encode_coords",
    "decode",
    "decode_coords",
    "enumerate_vertices",
    "enumerate_bruteforce",
]

MOVES = (1, 2, 3)

# Dense codes are x1*p^2 + x2*p + x3 stored as int64, so p^3 must fit.
_MAX_ENUM_P = 2**21

DEFAULT_ORACLE_BOUND = 101


class InvalidVertexError(ValueError):
    """A triple (or its code) is not a vertex: zero triple or equation fails."""


class OracleBoundError(ValueError):
    """The brute-force oracle was asked to scan beyond its configured bound."""


def _require_move(m: int) -> int:
    if m not in (1, 2, 3):
        raise ValueError(f"move must be 1, 2 or 3, got {m!r}")
    return m


def is_vertex(x1: int, x2: int, x3: int, p: int) -> bool:
    """True iff (x1, x2, x3) is a nonzero solution of the surface equation mod p."""
    p = require_prime(p)
    x1, x2, x3 = x1 % p, x2 % p, x3 % p
    if x1 == 0 and x2 == 0 and x3 == 0:
        return False
    return (x1 * x1 + x2 * x2 + x3 * x3) % p == 3 * x1 * x2 * x3 % p


class MarkoffTriple:
    """An ordered vertex (x1, x2, x3) over F_p; validates on construction."""

    __slots__ = ("x1", "x2", "x3", "p")

    def __init__(self, x1: int, x2: int, x3: int, p: int):
        self.p = require_prime(p)
        self.x1 = int(x1) % self.p
        self.x2 = int(x2) % self.p
        self.x3 = int(x3) % self.p
        if not is_vertex(self.x1, self.x2, self.x3, self.p):
            raise InvalidVertexError(
                f"({self.x1}, {self.x2}, {self.x3}) is not a vertex mod {self.p}"
            )

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x1, self.x2, self.x3)

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, MarkoffTriple)
            and self.p == other.p
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.coords, self.p))

    def __repr__(self):
        return f"MarkoffTriple({self.x1}, {self.x2}, {self.x3}, mod {self.p})"

    def vieta(self, m: int) -> "MarkoffTriple":
        """Replace coordinate m by the other root of its quadratic."""
        _require_move(m)
        p = self.p
        x1, x2, x3 = self.coords
        if m == 1:
            return MarkoffTriple((3 * x2 * x3 - x1) % p, x2, x3, p)
        if m == 2:
            return MarkoffTriple(x1, (3 * x1 * x3 - x2) % p, x3, p)
        return MarkoffTriple(x1, x2, (3 * x1 * x2 - x3) % p, p)

    def neighbors(self) -> list["MarkoffTriple"]:
        """The three move images, in move order; entries may repeat or equal self."""
        return [self.vieta(1), self.vieta(2), self.vieta(3)]

    def code(self) -> int:
        return (self.x1 * self.p + self.x2) * self.p + self.x3


def vieta(x: MarkoffTriple, m: int) -> MarkoffTriple:
    return x.vieta(m)


def neighbors(x: MarkoffTriple) -> list[MarkoffTriple]:
    return x.neighbors()


def encode(x: MarkoffTriple) -> int:
    """Dense code (x1*p + x2)*p + x3 of a vertex."""
    return x.code()


def encode_coords(x1: int, x2: int, x3: int, p: int) -> int:
    """Dense code of an arbitrary coordinate triple (no vertex check)."""
    p = require_prime(p)
    return ((x1 % p) * p + x2 % p) * p + x3 % p


def decode_coords(code: int, p: int) -> tuple[int, int, int]:
    """Inverse of encode_coords (no vertex check)."""
    p = require_prime(p)
    if not 0 <= code < p**3:
        raise InvalidVertexError(f"code {code} out of range for p = {p}")
    x3 = code % p
    x2 = (code // p) % p
    x1 = code // (p * p)
    return (x1, x2, x3)


def decode(code: int, p: int) -> MarkoffTriple:
    """Decode a dense code; raises InvalidVertexError unless it is a vertex."""
    x1, x2, x3 = decode_coords(code, p)
    return MarkoffTriple(x1, x2, x3, p)


def _enumerate_p2():
    # Brute force over the 8 triples mod 2; partner offsets computed directly.
    codes = []
    for x1 in range(2):
        for x2 in range(2):
            for x3 in range(2):
                if (x1, x2, x3) != (0, 0, 0) and is_vertex(x1, x2, x3, 2):
                    codes.append((x1 * 2 + x2) * 2 + x3)
    codes = np.array(sorted(codes), dtype=np.int64)
    x1 = codes // 4
    x2 = (codes // 2) % 2
    x3 = codes % 2
    nb3 = x1 * 4 + x2 * 2 + (3 * x1 * x2 - x3) % 2
    part3 = (np.searchsorted(codes, nb3) - np.arange(len(codes))).astype(np.int8)
    return codes, part3, x1.astype(np.int32), x2.astype(np.int32), x3.astype(np.int32)


@numba.njit(cache=True)
def _enum_kernel(p, sq, inv2):
    # pass 1: count roots over all (x1, x2) fibers
    count = 0
    for a in range(p):
        for b in range(p):
            t = 3 * a * b % p
            d = (t * t - 4 * ((a * a + b * b) % p)) % p
            r = sq[d]
            if r > 0:
                count += 2
            elif r == 0:
                count += 1
    count -= 1  # the (0, 0) fiber only yields the zero triple
    codes = np.empty(count, dtype=np.int64)
    part3 = np.empty(count, dtype=np.int8)
    x1 = np.empty(count, dtype=np.int32)
    x2 = np.empty(count, dtype=np.int32)
    x3 = np.empty(count, dtype=np.int32)
    i = 0
    for a in range(p):
        for b in range(p):
            t = 3 * a * b % p
            d = (t * t - 4 * ((a * a + b * b) % p)) % p
            r = sq[d]
            if r < 0 or (a == 0 and b == 0):
                continue
            prefix = (a * p + b) * p
            if r == 0:
                root = t * inv2 % p
                codes[i] = prefix + root
                part3[i] = 0
                x1[i] = a
                x2[i] = b
                x3[i] = root
                i += 1
            else:
                ra = (t + r) * inv2 % p
                rb = (t - r + p) * inv2 % p
                lo, hi = (ra, rb) if ra < rb else (rb, ra)
                codes[i] = prefix + lo
                codes[i + 1] = prefix + hi
                part3[i] = 1
                part3[i + 1] = -1
                x1[i] = a
                x1[i + 1] = a
                x2[i] = b
                x2[i + 1] = b
                x3[i] = lo
                x3[i + 1] = hi
                i += 2
    return codes, part3, x1, x2, x3


def _enumerate_full(p: int):
    """Sorted vertex codes, move-3 partner offsets (-1/0/+1), and coordinates.

    Solves the quadratic in x3 fiber by fiber over (x1, x2).  The two roots
    of a fiber are the move-3 orbit, so emitting them adjacently (small then
    large) yields code-sorted output with the pairing for free; a double
    root is a move-3 fixed point (offset 0).
    """
    p = require_prime(p)
    if p == 2:
        return _enumerate_p2()
    if p >= _MAX_ENUM_P:
        raise UnsupportedModulusError(
            f"p = {p} exceeds the dense-code enumeration limit ({_MAX_ENUM_P})"
        )
    sq = sqrt_array(p)
    return _enum_kernel(p, sq, inv_mod(2, p))


def enumerate_vertices(p: int) -> np.ndarray:
    """All vertex codes mod p, ascending.

    For odd p, solves the coordinate quadratic per fiber using the
    square-root table; p = 2 is scanned by brute force.
    """
    return _enumerate_full(p)[0]


def enumerate_bruteforce(
    p: int, bound: int = DEFAULT_ORACLE_BOUND
) -> np.ndarray:
    """Independent O(p^3) oracle: scan every triple with the vertex predicate.

    Refuses p above `bound` so the oracle cannot be mistaken for the real
    enumerator on large inputs.
    """
    p = require_prime(p)
    if p > bound:
        raise OracleBoundError(f"brute-force oracle refuses p = {p} > bound {bound}")
    x = np.arange(p, dtype=np.int64)
    rows = max(1, 2_000_000 // (p * p))
    found = []
    for lo in range(0, p, rows):
        x1 = x[lo : lo + rows][:, None, None]
        x2 = x[None, :, None]
        x3 = x[None, None, :]
        lhs = (x1 * x1 + x2 * x2 + x3 * x3) % p
        rhs = 3 * ((x1 * x2) % p) * x3 % p
        c1, c2, c3 = np.nonzero(lhs == rhs)
        found.append(((c1 + lo) * p + c2) * p + c3)
    codes = np.concatenate(found)
    return codes[codes != 0]
