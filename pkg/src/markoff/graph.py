"""Component structure of the move graph, BFS witnesses, and integer lifts.

The graph is never materialized: each Vieta move partitions the vertex list
into fibers of at most two vertices (the roots of one coordinate quadratic),
so connected components come from a union-find over fiber buckets, and
breadth-first search walks neighbor positions computed on demand.  Lifting
replays a mod-p move path from (1, 1, 1) over the integers, where the same
moves preserve positive solutions of the surface equation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .core import (
    InvalidVertexError,
    MarkoffTriple,
    _enumerate_full,
    encode_coords,
)
from .penner import ComponentSums, penner_arrays
from .prime_field import UnsupportedModulusError, inverse_array, require_prime

__all__ = [
    "BASE_TRIPLE",
    "DEFAULT_MOVE_GUARD",
    "InvariantViolationError",
    "LiftGuardError",
    "ComponentSummary",
    "IntegerTriple",
    "MarkoffGraph",
    "components",
    "is_connected",
    "bfs_path",
    "selfloop_census",
    "lift_to_integers",
    "replay_moves",
]

# Root of the integer solution tree and base point for lifting; reduces to a
# vertex mod every p.
BASE_TRIPLE = (1, 1, 1)

# Integer coordinates grow roughly exponentially with replay length, so cap it.
DEFAULT_MOVE_GUARD = 10_000


class InvariantViolationError(RuntimeError):
    """An identity that provably holds was observed to fail (a bug, not data)."""


class LiftGuardError(RuntimeError):
    """A lift replay would exceed the configured move-count guard."""


@numba.njit(cache=True)
def _uf_find(parent, i):
    # path halving: every step links i to its grandparent
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


@numba.njit(cache=True)
def _uf_union(parent, weight, a, b):
    ra = _uf_find(parent, a)
    rb = _uf_find(parent, b)
    if ra != rb:
        if weight[ra] < weight[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        weight[ra] += weight[rb]


@numba.njit(cache=True)
def _components_kernel(p, x1, x2, x3, part3):
    """Union-find over the three move pairings; returns flattened parents
    plus the number of matched (two-vertex) fibers per move.

    Moves 1 and 2 pair vertices sharing a (fixed-coordinate) fiber key,
    found with a direct-address bucket; move-3 partners are adjacent in the
    enumeration order.  A fiber with no partner is a move-fixed vertex.
    """
    n = x1.shape[0]
    parent = np.arange(n, dtype=np.int32)
    weight = np.ones(n, dtype=np.int32)
    pairs3 = 0
    for i in range(n):
        j = i + part3[i]
        if j > i:
            pairs3 += 1
            _uf_union(parent, weight, i, j)
    bucket = np.full(p * p, -1, dtype=np.int32)
    pairs1 = 0
    for i in range(n):
        k = x2[i] * p + x3[i]
        j = bucket[k]
        if j < 0:
            bucket[k] = i
        else:
            pairs1 += 1
            _uf_union(parent, weight, i, j)
    bucket[:] = -1
    pairs2 = 0
    for i in range(n):
        k = x1[i] * p + x3[i]
        j = bucket[k]
        if j < 0:
            bucket[k] = i
        else:
            pairs2 += 1
            _uf_union(parent, weight, i, j)
    for i in range(n):
        parent[i] = _uf_find(parent, i)
    return parent, pairs1, pairs2, pairs3


@numba.njit(cache=True)
def _selfloop_criterion_kernel(p, x1, x2, x3):
    """Count vertices with 2*x_m = 3*x_j*x_k per move (the fixed-point test)."""
    c1 = c2 = c3 = 0
    for i in range(x1.shape[0]):
        a = np.int64(x1[i])
        b = np.int64(x2[i])
        c = np.int64(x3[i])
        if (2 * a - 3 * (b * c % p)) % p == 0:
            c1 += 1
        if (2 * b - 3 * (a * c % p)) % p == 0:
            c2 += 1
        if (2 * c - 3 * (a * b % p)) % p == 0:
            c3 += 1
    return c1, c2, c3


@numba.njit(cache=True)
def _first_occurrence(parent):
    first = np.full(parent.shape[0], -1, dtype=np.int64)
    for i in range(parent.shape[0]):
        r = parent[i]
        if first[r] < 0:
            first[r] = i
    return first


@numba.njit(cache=True)
def _penner_sums_kernel(p, x1, x2, x3, labels, inv, ncomp):
    """Per-component half-coordinate sums, accumulated exactly.

    int64 partials cannot overflow: n < p^2 and p < 2^21 keep every partial
    below n * (p - 1) < 2^63.  Returns the sums and a count of rows with two
    zero coordinates (which must be zero on any vertex list).
    """
    s = np.zeros((3, ncomp), dtype=np.int64)
    inv2 = inv[2]
    bad = 0
    for i in range(x1.shape[0]):
        a = np.int64(x1[i])
        b = np.int64(x2[i])
        c = np.int64(x3[i])
        if (a == 0) + (b == 0) + (c == 0) > 1:
            bad += 1
            continue
        if a == 0:
            y1, y2, y3 = 0, inv2, inv2
        elif b == 0:
            y1, y2, y3 = inv2, 0, inv2
        elif c == 0:
            y1, y2, y3 = inv2, inv2, 0
        else:
            y1 = a * inv[3 * (b * c % p) % p] % p
            y2 = b * inv[3 * (a * c % p) % p] % p
            y3 = c * inv[3 * (a * b % p) % p] % p
        lab = labels[i]
        s[0, lab] += y1
        s[1, lab] += y2
        s[2, lab] += y3
    return s % p, bad


@dataclass(frozen=True)
class ComponentSummary:
    """One connected component: smallest vertex code, exact size, verdicts."""

    representative: int
    size: int
    chen_ok: bool
    penner_sums: ComponentSums | None


@dataclass(frozen=True)
class IntegerTriple:
    """A nonnegative integer solution of a1^2 + a2^2 + a3^2 = 3*a1*a2*a3."""

    a1: int
    a2: int
    a3: int

    def __post_init__(self):
        a1, a2, a3 = self.a1, self.a2, self.a3
        if min(a1, a2, a3) < 0:
            raise ValueError("integer solutions here are nonnegative")
        if a1 * a1 + a2 * a2 + a3 * a3 != 3 * a1 * a2 * a3:
            raise ValueError(f"({a1}, {a2}, {a3}) does not solve the surface equation")

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    def reduce(self, p: int) -> tuple[int, int, int]:
        return (self.a1 % p, self.a2 % p, self.a3 % p)


def replay_moves(start, moves, p: int | None = None) -> tuple[int, int, int]:
    """Apply a move sequence to a coordinate triple.

    Over the integers when p is None (arbitrary precision), else mod p.
    """
    x1, x2, x3 = start
    for m in moves:
        if m == 1:
            x1 = 3 * x2 * x3 - x1
        elif m == 2:
            x2 = 3 * x1 * x3 - x2
        elif m == 3:
            x3 = 3 * x1 * x2 - x3
        else:
            raise ValueError(f"move must be 1, 2 or 3, got {m!r}")
        if p is not None:
            x1, x2, x3 = x1 % p, x2 % p, x3 % p
    return (x1, x2, x3)


class MarkoffGraph:
    """The move graph at one prime, with cached component and BFS state."""

    def __init__(self, p: int):
        self.p = require_prime(p)
        # coordinate arrays are int32 (coordinates are < p < 2^21); widen via
        # coords64() before arithmetic whose intermediates can pass 2^31
        self.codes, self._part3, self.x1, self.x2, self.x3 = _enumerate_full(self.p)
        self._labels = None
        self._sizes = None
        self._reps = None
        self._pairs = None
        self._nbr = None
        self._penner = None
        self._base_tree = None

    @property
    def n(self) -> int:
        return int(self.codes.size)

    def position(self, code: int) -> int:
        """Dense rank of a vertex code; raises InvalidVertexError if absent."""
        i = int(np.searchsorted(self.codes, code))
        if i == self.n or int(self.codes[i]) != int(code):
            raise InvalidVertexError(f"code {code} is not a vertex mod {self.p}")
        return i

    def triple(self, pos: int) -> MarkoffTriple:
        return MarkoffTriple(
            int(self.x1[pos]), int(self.x2[pos]), int(self.x3[pos]), self.p
        )

    # -- adjacency ---------------------------------------------------------

    def coords64(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordinate arrays widened to int64 for overflow-free arithmetic."""
        return (
            self.x1.astype(np.int64),
            self.x2.astype(np.int64),
            self.x3.astype(np.int64),
        )

    def neighbor_positions(self) -> np.ndarray:
        """(3, n) array: position of each vertex's move-m image.

        Built by binary search; verifies closure (every image is a vertex).
        """
        if self._nbr is not None:
            return self._nbr
        p, p2 = self.p, self.p * self.p
        x1, x2, x3 = self.coords64()
        out = np.empty((3, self.n), dtype=np.int64)
        for m in (1, 2, 3):
            if m == 1:
                nb = (3 * (x2 * x3 % p) - x1) % p * p2 + (self.codes % p2)
            elif m == 2:
                nb = x1 * p2 + (3 * (x1 * x3 % p) - x2) % p * p + x3
            else:
                nb = self.codes - x3 + (3 * (x1 * x2 % p) - x3) % p
            pos = np.searchsorted(self.codes, nb)
            pos[pos == self.n] = 0
            if not np.array_equal(self.codes[pos], nb):
                raise InvariantViolationError(
                    f"a move image is not a vertex at p = {self.p}"
                )
            out[m - 1] = pos
        self._nbr = out
        return out

    # -- components --------------------------------------------------------

    def component_index(self) -> np.ndarray:
        """Per-vertex component id, components numbered by ascending representative."""
        self._compute_components()
        return self._labels

    def component_sizes(self) -> np.ndarray:
        self._compute_components()
        return self._sizes

    def component_representatives(self) -> np.ndarray:
        self._compute_components()
        return self._reps

    def _compute_components(self):
        if self._labels is not None:
            return
        n = self.n
        parent, pairs1, pairs2, pairs3 = _components_kernel(
            self.p, self.x1, self.x2, self.x3, self._part3
        )
        self._pairs = (pairs1, pairs2, pairs3)
        counts = np.bincount(parent, minlength=n)
        roots = np.flatnonzero(counts)
        first = _first_occurrence(parent)[roots]
        order = np.argsort(first)
        comp_of_root = np.empty(n, dtype=np.int32)
        comp_of_root[roots[order]] = np.arange(roots.size, dtype=np.int32)
        self._labels = comp_of_root[parent]
        self._sizes = counts[roots][order]
        self._reps = self.codes[first[order]]

    def penner_values(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Half-coordinate arrays aligned with the vertex list (p > 3)."""
        if self._penner is None:
            self._penner = penner_arrays(self.x1, self.x2, self.x3, self.p)
        return self._penner

    def component_penner_sums(self) -> list[ComponentSums]:
        """Exact per-component coordinate sums, in component order (p > 3)."""
        if self.p <= 3:
            raise UnsupportedModulusError(
                f"half-coordinate sums need p > 3, got p = {self.p}"
            )
        self._compute_components()
        sums, two_zero_rows = _penner_sums_kernel(
            self.p,
            self.x1,
            self.x2,
            self.x3,
            self._labels,
            inverse_array(self.p),
            self._sizes.size,
        )
        if two_zero_rows:
            raise InvariantViolationError(
                f"{two_zero_rows} vertices with two zero coordinates at p = {self.p}"
            )
        return [
            ComponentSums(
                self.p,
                int(self._sizes[i] % self.p),
                (int(sums[0, i]), int(sums[1, i]), int(sums[2, i])),
            )
            for i in range(self._sizes.size)
        ]

    def component_summaries(self, penner: bool | None = None) -> list[ComponentSummary]:
        """All components sorted by representative code.

        penner=None attaches coordinate sums exactly when p > 3; True forces
        them (an error for p <= 3); False skips them.
        """
        if penner is None:
            penner = self.p > 3
        self._compute_components()
        sums = self.component_penner_sums() if penner else None
        return [
            ComponentSummary(
                representative=int(self._reps[i]),
                size=int(self._sizes[i]),
                chen_ok=int(self._sizes[i]) % self.p == 0,
                penner_sums=sums[i] if sums else None,
            )
            for i in range(self._sizes.size)
        ]

    # -- self-loops ---------------------------------------------------------

    def selfloop_counts(self) -> tuple[int, int, int]:
        """Number of move-fixed vertices per move.

        A vertex is move-fixed exactly when its coordinate quadratic has a
        double root, i.e. its fiber holds one vertex instead of a matched
        pair; that structural count is cross-checked against the algebraic
        fixed-point criterion 2*x_m = 3*x_j*x_k.
        """
        self._compute_components()
        algebraic = _selfloop_criterion_kernel(self.p, self.x1, self.x2, self.x3)
        out = []
        for m in (1, 2, 3):
            structural = self.n - 2 * self._pairs[m - 1]
            if algebraic[m - 1] != structural:
                raise InvariantViolationError(
                    f"self-loop counts disagree at p = {self.p}, move {m}: "
                    f"algebraic {algebraic[m - 1]} vs unmatched-fiber {structural}"
                )
            out.append(int(algebraic[m - 1]))
        return tuple(out)

    # -- BFS and lifting -----------------------------------------------------

    def _bfs(self, src: int, stop: int | None = None):
        """Layered BFS treating moves in order 1, 2, 3 across a sorted frontier.

        Ties for a shortest predecessor therefore resolve to the smallest
        move index, then the smallest parent code, making paths deterministic.
        """
        n = self.n
        nbr = self.neighbor_positions()
        dist = np.full(n, -1, dtype=np.int32)
        parent = np.full(n, -1, dtype=np.int32)
        pmove = np.zeros(n, dtype=np.int8)
        dist[src] = 0
        frontier = np.array([src], dtype=np.int64)
        d = 0
        while frontier.size:
            if stop is not None and dist[stop] >= 0:
                break
            d += 1
            layer = []
            for m in range(3):
                nb = nbr[m, frontier]
                fresh = dist[nb] < 0
                cand = nb[fresh]
                if cand.size:
                    uniq, first = np.unique(cand, return_index=True)
                    dist[uniq] = d
                    parent[uniq] = frontier[fresh][first]
                    pmove[uniq] = m + 1
                    layer.append(uniq)
            frontier = (
                np.sort(np.concatenate(layer)) if layer else np.empty(0, np.int64)
            )
        return dist, parent, pmove

    def base_position(self) -> int:
        return self.position(encode_coords(*BASE_TRIPLE, self.p))

    def bfs_path(self, from_code: int, to_code: int) -> list[int] | None:
        """Shortest move sequence turning one vertex into another, or None.

        Deterministic: among equal-length paths, smaller move indices and
        then smaller intermediate codes are preferred.
        """
        src = self.position(from_code)
        dst = self.position(to_code)
        if src == dst:
            return []
        dist, parent, pmove = self._bfs(src, stop=dst)
        return self._walk_back(src, dst, dist, parent, pmove)

    @staticmethod
    def _walk_back(src, dst, dist, parent, pmove) -> list[int] | None:
        if dist[dst] < 0:
            return None
        moves = []
        v = dst
        while v != src:
            moves.append(int(pmove[v]))
            v = int(parent[v])
        moves.reverse()
        return moves

    def _tree_from_base(self):
        if self._base_tree is None:
            self._base_tree = self._bfs(self.base_position())
        return self._base_tree

    def path_from_base(self, target_code: int) -> list[int] | None:
        """Shortest move path from (1, 1, 1) to a vertex, using a cached tree."""
        dst = self.position(target_code)
        dist, parent, pmove = self._tree_from_base()
        return self._walk_back(self.base_position(), dst, dist, parent, pmove)

    def lift(
        self, target_code: int, max_moves: int = DEFAULT_MOVE_GUARD
    ) -> IntegerTriple | None:
        """Integer solution reducing to the target vertex mod p, or None.

        Replays the BFS move path from (1, 1, 1) over the integers; refuses
        paths longer than max_moves (coordinates grow exponentially).
        """
        moves = self.path_from_base(target_code)
        if moves is None:
            return None
        if len(moves) > max_moves:
            raise LiftGuardError(
                f"lift path of length {len(moves)} exceeds guard {max_moves}"
            )
        lifted = IntegerTriple(*replay_moves(BASE_TRIPLE, moves))
        if encode_coords(*lifted.reduce(self.p), self.p) != int(target_code):
            raise InvariantViolationError(
                f"replayed lift does not reduce to its target at p = {self.p}"
            )
        return lifted


def components(p: int, penner: bool | None = None) -> list[ComponentSummary]:
    """Component census at p, with half-coordinate sum identities asserted.

    For p > 3 every component's coordinate sums must equal half its size
    mod p; a failure raises InvariantViolationError since it would signal
    an implementation bug rather than a mathematical possibility.
    """
    summaries = MarkoffGraph(p).component_summaries(penner)
    for s in summaries:
        if s.penner_sums is not None and not s.penner_sums.ok:
            raise InvariantViolationError(
                f"component at representative {s.representative} violates the "
                f"half-size sum identity at p = {p}"
            )
    return summaries


def is_connected(p: int) -> bool:
    """Whether the move graph at p has a single connected component."""
    return len(MarkoffGraph(p).component_summaries(penner=False)) == 1


def bfs_path(p: int, from_code: int, to_code: int) -> list[int] | None:
    return MarkoffGraph(p).bfs_path(from_code, to_code)


def selfloop_census(p: int) -> tuple[int, int, int]:
    """Per-move counts of move-fixed vertices at p."""
    return MarkoffGraph(p).selfloop_counts()


def lift_to_integers(
    p: int, target_code: int, max_moves: int = DEFAULT_MOVE_GUARD
) -> IntegerTriple | None:
    return MarkoffGraph(p).lift(target_code, max_moves)
