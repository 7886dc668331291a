"""Half-coordinates attached to vertices and their summation identities.

Each vertex (x1, x2, x3) with nonzero product gets y_i = x_i / (3*x_j*x_k)
(Penner coordinates); a vertex with x_i = 0 gets 0 in slot i and 1/2 in the
other two.  Dividing the surface equation by 3*x1*x2*x3 shows the
coordinates always sum to 1, and the two endpoints of any move-m edge have
y_m values summing to 1 (a move-fixed vertex therefore has y_m = 1/2).
Summed over a move-closed vertex set C, each coordinate totals |C|/2, which
forces |C| = 3*|C|/2, i.e. p divides |C|.  These are the identities this
module evaluates exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InvalidVertexError, MarkoffTriple, decode_coords
from .prime_field import (
    UnsupportedModulusError,
    inv_mod,
    inverse_array,
    require_prime,
)

__all__ = [
    "ClosureError",
    "PennerTriple",
    "ComponentSums",
    "penner_map",
    "penner_coords",
    "penner_arrays",
    "check_affine_sum",
    "check_edge_identity",
    "component_sums",
    "chen_verdict",
]


class ClosureError(ValueError):
    """A vertex set is not closed under a Vieta move; names a witness."""

    def __init__(self, code: int, move: int, p: int):
        self.code = int(code)
        self.move = int(move)
        self.p = p
        coords = decode_coords(self.code, p)
        super().__init__(
            f"vertex set not move-closed: move {self.move} leaves the set "
            f"at vertex {coords} mod {p}"
        )


class PennerTriple:
    """The (y1, y2, y3) attached to a vertex; coordinates sum to 1 in F_p."""

    __slots__ = ("y1", "y2", "y3", "p")

    def __init__(self, y1: int, y2: int, y3: int, p: int):
        self.p = require_prime(p)
        self.y1 = int(y1) % self.p
        self.y2 = int(y2) % self.p
        self.y3 = int(y3) % self.p

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.y1, self.y2, self.y3)

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, PennerTriple)
            and self.p == other.p
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.coords, self.p))

    def __repr__(self):
        return f"PennerTriple({self.y1}, {self.y2}, {self.y3}, mod {self.p})"


def _require_modulus(p: int) -> int:
    p = require_prime(p)
    if p == 2:
        raise UnsupportedModulusError("half-coordinates need 1/2, absent mod 2")
    if p == 3:
        raise UnsupportedModulusError("half-coordinates need 1/3, absent mod 3")
    return p


def penner_coords(x1: int, x2: int, x3: int, p: int) -> tuple[int, int, int]:
    """Raw coordinate computation; requires p > 3 and at most one zero slot."""
    p = _require_modulus(p)
    x1, x2, x3 = x1 % p, x2 % p, x3 % p
    zeros = (x1 == 0) + (x2 == 0) + (x3 == 0)
    if zeros > 1:
        raise InvalidVertexError(
            f"({x1}, {x2}, {x3}) has {zeros} zero coordinates; vertices have at most one"
        )
    inv2 = inv_mod(2, p)
    if zeros == 0:
        return (
            x1 * inv_mod(3 * x2 * x3, p) % p,
            x2 * inv_mod(3 * x1 * x3, p) % p,
            x3 * inv_mod(3 * x1 * x2, p) % p,
        )
    if x1 == 0:
        return (0, inv2, inv2)
    if x2 == 0:
        return (inv2, 0, inv2)
    return (inv2, inv2, 0)


def penner_map(x: MarkoffTriple) -> PennerTriple:
    """Attach half-coordinates to a vertex (p > 3)."""
    return PennerTriple(*penner_coords(x.x1, x.x2, x.x3, x.p), x.p)


def penner_arrays(
    x1: np.ndarray, x2: np.ndarray, x3: np.ndarray, p: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized penner_coords over parallel coordinate arrays."""
    p = _require_modulus(p)
    x1 = np.asarray(x1, dtype=np.int64)
    x2 = np.asarray(x2, dtype=np.int64)
    x3 = np.asarray(x3, dtype=np.int64)
    inv = inverse_array(p)
    inv2 = int(inv[2])
    m1, m2, m3 = x1 == 0, x2 == 0, x3 == 0
    if ((m1 & m2) | (m1 & m3) | (m2 & m3)).any():
        raise InvalidVertexError("input contains a triple with two zero coordinates")
    y1 = x1 * inv[3 * (x2 * x3 % p) % p] % p
    y2 = x2 * inv[3 * (x1 * x3 % p) % p] % p
    y3 = x3 * inv[3 * (x1 * x2 % p) % p] % p
    y1[m2 | m3] = inv2
    y2[m1 | m3] = inv2
    y3[m1 | m2] = inv2
    return y1, y2, y3


def check_affine_sum(y: PennerTriple) -> bool:
    """True iff y1 + y2 + y3 = 1 mod p."""
    return (y.y1 + y.y2 + y.y3) % y.p == 1


def check_edge_identity(x: MarkoffTriple, m: int) -> bool:
    """True iff y_m + y'_m = 1 across the move-m edge at x.

    For a move-fixed vertex the same formula asserts 2*y_m = 1.
    """
    y = penner_map(x).coords
    y_other = penner_map(x.vieta(m)).coords
    return (y[m - 1] + y_other[m - 1]) % x.p == 1


@dataclass(frozen=True)
class ComponentSums:
    """Size (mod p) and exact per-coordinate sums over a move-closed set."""

    p: int
    size_mod_p: int
    sums: tuple[int, int, int]

    @property
    def ok(self) -> bool:
        """Each coordinate sum equals half the size mod p."""
        half = self.size_mod_p * inv_mod(2, self.p) % self.p
        return all(s == half for s in self.sums)


def _neighbor_codes(x1, x2, x3, m: int, p: int):
    p2 = p * p
    if m == 1:
        return (3 * (x2 * x3 % p) - x1) % p * p2 + x2 * p + x3
    if m == 2:
        return x1 * p2 + (3 * (x1 * x3 % p) - x2) % p * p + x3
    return x1 * p2 + x2 * p + (3 * (x1 * x2 % p) - x3) % p


def component_sums(component, p: int) -> ComponentSums:
    """Per-coordinate sums over a Vieta-closed set of vertex codes.

    Verifies the set really is closed under all three moves (raising
    ClosureError with a witness otherwise) and that every code is a vertex.
    Accumulation happens in F_p.
    """
    p = _require_modulus(p)
    codes = np.unique(np.asarray(list(component), dtype=np.int64))
    if codes.size == 0:
        return ComponentSums(p, 0, (0, 0, 0))
    if codes[0] < 0 or codes[-1] >= p**3:
        raise InvalidVertexError("component contains out-of-range codes")
    p2 = p * p
    x1 = codes // p2
    x2 = (codes // p) % p
    x3 = codes % p
    bad = (x1 * x1 + x2 * x2 + x3 * x3) % p != 3 * ((x1 * x2) % p) * x3 % p
    bad |= codes == 0
    if bad.any():
        raise InvalidVertexError(
            f"code {int(codes[np.argmax(bad)])} is not a vertex mod {p}"
        )
    for m in (1, 2, 3):
        nb = _neighbor_codes(x1, x2, x3, m, p)
        pos = np.searchsorted(codes, nb)
        pos[pos == codes.size] = 0
        missing = codes[pos] != nb
        if missing.any():
            raise ClosureError(int(codes[np.argmax(missing)]), m, p)
    y1, y2, y3 = penner_arrays(x1, x2, x3, p)
    # int64 partial sums cannot overflow: n < p^2 and p < 2^21 bound n*(p-1) < 2^63
    sums = tuple(int(y.sum(dtype=np.int64)) % p for y in (y1, y2, y3))
    return ComponentSums(p, int(codes.size % p), sums)


def chen_verdict(component_size: int, p: int) -> bool:
    """True iff p divides the component size (guaranteed for p > 3)."""
    p = require_prime(p)
    if component_size < 0:
        raise ValueError("component size must be nonnegative")
    return component_size % p == 0
