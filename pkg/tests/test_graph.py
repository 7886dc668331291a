import numpy as np
import pytest

from markoff.core import (
    InvalidVertexError,
    MarkoffTriple,
    decode,
    encode_coords,
    enumerate_vertices,
)
from markoff.graph import (
    BASE_TRIPLE,
    IntegerTriple,
    InvariantViolationError,
    LiftGuardError,
    MarkoffGraph,
    bfs_path,
    components,
    is_connected,
    lift_to_integers,
    replay_moves,
    selfloop_census,
)
from markoff.prime_field import primes_in_range


def reference_bfs(p, src_code, dst_code):
    """Scalar oracle BFS with the same tie-break policy: per layer, moves in
    order 1..3 across an ascending frontier; first discovery wins."""
    src, dst = decode(src_code, p), decode(dst_code, p)
    if src == dst:
        return []
    parents = {src.coords: None}
    frontier = [src]
    while frontier:
        discovered = []
        for m in (1, 2, 3):
            for t in frontier:
                image = t.vieta(m)
                if image.coords not in parents:
                    parents[image.coords] = (t, m)
                    discovered.append(image)
        if dst.coords in parents:
            break
        frontier = sorted(discovered, key=lambda t: t.code())
        frontier = list(dict.fromkeys(frontier))
    if dst.coords not in parents:
        return None
    moves = []
    cur = dst.coords
    while parents[cur] is not None:
        t, m = parents[cur]
        moves.append(m)
        cur = t.coords
    moves.reverse()
    return moves


class TestComponents:
    def test_p7_single_component(self):
        summaries = components(7)
        assert len(summaries) == 1
        assert summaries[0].size == 28
        assert summaries[0].chen_ok
        assert summaries[0].penner_sums.ok

    def test_p5_single_component(self):
        (summary,) = components(5)
        assert summary.size == 40
        assert summary.chen_ok

    def test_p3_cube_component(self):
        (summary,) = components(3)
        assert summary.size == 8
        assert not summary.chen_ok  # 8 = 2 mod 3
        assert summary.penner_sums is None

    def test_p2_component(self):
        (summary,) = components(2)
        assert summary.size == 4
        assert summary.chen_ok
        assert summary.penner_sums is None

    def test_representative_is_smallest_code(self):
        for p in (5, 7, 13):
            (summary,) = components(p)
            assert summary.representative == int(enumerate_vertices(p)[0])

    def test_sizes_partition_vertices(self):
        for p in primes_in_range(2, 101):
            summaries = MarkoffGraph(p).component_summaries(penner=False)
            assert sum(s.size for s in summaries) == len(enumerate_vertices(p))

    def test_component_index_matches_sizes(self):
        g = MarkoffGraph(13)
        labels = g.component_index()
        assert np.array_equal(
            np.bincount(labels), np.asarray(g.component_sizes())
        )

    def test_labels_constant_on_edges(self):
        for p in (5, 7, 11, 13):
            g = MarkoffGraph(p)
            labels = g.component_index()
            nbr = g.neighbor_positions()
            for m in range(3):
                assert np.array_equal(labels[nbr[m]], labels)

    def test_involution_and_closure_exhaustive_to_101(self):
        for p in primes_in_range(2, 101):
            g = MarkoffGraph(p)
            nbr = g.neighbor_positions()  # construction validates move closure
            idx = np.arange(g.n)
            for m in range(3):
                assert np.array_equal(nbr[m][nbr[m]], idx), f"p={p}, move {m + 1}"

    def test_assertion_wiring(self, monkeypatch):
        from markoff import graph as graph_mod
        from markoff.penner import ComponentSums

        monkeypatch.setattr(
            graph_mod.MarkoffGraph,
            "component_penner_sums",
            lambda self: [ComponentSums(self.p, 1, (0, 0, 0))],
        )
        with pytest.raises(InvariantViolationError):
            components(5)


class TestConnectivity:
    def test_examples(self):
        assert is_connected(5)
        assert is_connected(7)
        assert is_connected(2)
        assert is_connected(3)


class TestSelfLoops:
    def test_p5_none(self):
        assert selfloop_census(5) == (0, 0, 0)

    def test_p3_none(self):
        assert selfloop_census(3) == (0, 0, 0)

    def test_p2_counts_and_witness(self):
        assert selfloop_census(2) == (2, 2, 2)
        t = MarkoffTriple(1, 1, 0, 2)
        assert t.vieta(1) == t  # move-1 count includes (1,1,0)

    def test_matches_scalar_scan(self):
        for p in primes_in_range(2, 31):
            expect = [0, 0, 0]
            for code in enumerate_vertices(p):
                t = decode(int(code), p)
                for m in (1, 2, 3):
                    if t.vieta(m) == t:
                        expect[m - 1] += 1
            assert selfloop_census(p) == tuple(expect)


class TestBfsPath:
    def test_single_move(self):
        a = MarkoffTriple(1, 1, 1, 5).code()
        b = MarkoffTriple(2, 1, 1, 5).code()
        assert bfs_path(5, a, b) == [1]

    def test_two_moves(self):
        a = MarkoffTriple(1, 1, 1, 5).code()
        b = MarkoffTriple(2, 0, 1, 5).code()
        assert bfs_path(5, a, b) == [1, 2]

    def test_identity(self):
        for p in (2, 5, 13):
            a = int(enumerate_vertices(p)[0])
            assert bfs_path(p, a, a) == []

    def test_rejects_invalid_codes(self):
        with pytest.raises(InvalidVertexError):
            bfs_path(5, 0, 31)
        with pytest.raises(InvalidVertexError):
            bfs_path(5, 31, 10**9)

    def test_paths_are_valid_and_shortest(self):
        rng = np.random.default_rng(7)
        for p in (5, 7, 11, 13):
            g = MarkoffGraph(p)
            codes = g.codes
            for _ in range(25):
                a, b = (int(codes[i]) for i in rng.integers(0, len(codes), 2))
                path = g.bfs_path(a, b)
                ref = reference_bfs(p, a, b)
                assert path == ref  # same tie-break policy as the oracle
                x = decode(a, p).coords
                assert replay_moves(x, path, p) == decode(b, p).coords

    def test_deterministic_across_instances(self):
        a = MarkoffTriple(1, 1, 1, 13).code()
        b = int(enumerate_vertices(13)[-1])
        assert bfs_path(13, a, b) == bfs_path(13, a, b)

    def test_agrees_with_components(self):
        rng = np.random.default_rng(11)
        for p in (5, 13, 31, 61, 101):
            g = MarkoffGraph(p)
            labels = g.component_index()
            for _ in range(10):
                i, j = rng.integers(0, g.n, 2)
                path = g.bfs_path(int(g.codes[i]), int(g.codes[j]))
                assert (path is not None) == (labels[i] == labels[j])

    def test_unreachable_returns_none(self):
        # handcrafted two-component graph: two vertices fixed by every move
        g = object.__new__(MarkoffGraph)
        g.p = 5
        g.codes = np.array([31, 156], dtype=np.int64)  # (1,1,1) and (2,1,1)... codes unused beyond lookup
        g._nbr = np.array([[0, 1], [0, 1], [0, 1]], dtype=np.int64)
        g._base_tree = None
        assert g.bfs_path(31, 156) is None


class TestLift:
    def test_examples(self):
        assert lift_to_integers(5, MarkoffTriple(2, 1, 1, 5).code()) == IntegerTriple(2, 1, 1)
        assert lift_to_integers(5, MarkoffTriple(2, 0, 1, 5).code()) == IntegerTriple(2, 5, 1)
        assert lift_to_integers(5, MarkoffTriple(1, 1, 1, 5).code()) == IntegerTriple(1, 1, 1)

    def test_lift_solves_and_reduces(self):
        rng = np.random.default_rng(3)
        for p in (7, 23, 47):
            g = MarkoffGraph(p)
            for i in rng.integers(0, g.n, 20):
                code = int(g.codes[i])
                lifted = g.lift(code)
                a1, a2, a3 = lifted.coords
                assert a1 * a1 + a2 * a2 + a3 * a3 == 3 * a1 * a2 * a3
                assert encode_coords(*lifted.reduce(p), p) == code

    def test_move_guard(self):
        target = MarkoffTriple(2, 0, 1, 5).code()  # two moves from base
        with pytest.raises(LiftGuardError):
            lift_to_integers(5, target, max_moves=1)

    def test_invalid_target(self):
        with pytest.raises(InvalidVertexError):
            lift_to_integers(5, 1)


class TestReplay:
    def test_commutes_with_reduction(self):
        # replaying over Z then reducing equals replaying mod p
        rng = np.random.default_rng(5)
        for p in (5, 7, 13):
            g = MarkoffGraph(p)
            for _ in range(20):
                code = int(g.codes[rng.integers(0, g.n)])
                start_int = g.lift(code).coords
                start_mod = decode(code, p).coords
                path = [int(m) for m in rng.integers(1, 4, 8)]
                over_z = replay_moves(start_int, path)
                assert tuple(v % p for v in over_z) == replay_moves(start_mod, path, p)

    def test_base_stays_on_surface_over_z(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            path = [int(m) for m in rng.integers(1, 4, 12)]
            a1, a2, a3 = replay_moves(BASE_TRIPLE, path)
            assert a1 * a1 + a2 * a2 + a3 * a3 == 3 * a1 * a2 * a3
            assert min(a1, a2, a3) >= 1  # positivity is preserved from (1,1,1)

    def test_rejects_bad_move(self):
        with pytest.raises(ValueError):
            replay_moves((1, 1, 1), [4])


class TestIntegerTriple:
    def test_validates_equation(self):
        with pytest.raises(ValueError):
            IntegerTriple(1, 2, 3)
        with pytest.raises(ValueError):
            IntegerTriple(-1, -1, 1)

    def test_markoff_numbers(self):
        IntegerTriple(1, 1, 1)
        IntegerTriple(2, 1, 1)
        IntegerTriple(2, 5, 1)
        IntegerTriple(2, 5, 29)
