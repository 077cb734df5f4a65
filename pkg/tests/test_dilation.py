import math
import random

import pytest

from delaunay_dilation.dilation import (
    EuclideanGraph,
    graph_from_triangulation,
    max_dilation,
    pair_dilation,
    pairs_to_csv,
    report_to_json,
    shortest_path,
)
from delaunay_dilation.geom import GeometryError, dist
from delaunay_dilation.triangulation import PointSet, Triangulation, delaunay
from oracles import exhaustive_max_dilation

SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def square_graph():
    ps = PointSet.from_coords(SQUARE)
    return graph_from_triangulation(ps, delaunay(ps))


def random_graph(n, seed):
    rng = random.Random(seed)
    ps = PointSet.from_coords(
        [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(n)]
    )
    return graph_from_triangulation(ps, delaunay(ps))


class TestGraphFromTriangulation:
    def test_square_weights(self):
        g = square_graph()
        assert sorted(g.weights) == pytest.approx([1, 1, 1, 1, math.sqrt(2)])
        assert len(g.edges) == 5

    def test_345_triangle(self):
        ps = PointSet.from_coords([(0, 0), (3, 0), (0, 4)])
        g = graph_from_triangulation(ps, delaunay(ps))
        assert sorted(g.weights) == [3.0, 4.0, 5.0]

    def test_chew16_edge_count(self, chew16):
        g = graph_from_triangulation(chew16.points, chew16.triangulation)
        assert len(g.edges) == 3 * 16 - 16 - 3

    def test_weights_recomputable(self):
        g = random_graph(40, seed=3)
        assert g.check_weights()


class TestShortestPath:
    def test_same_vertex(self):
        g = square_graph()
        assert shortest_path(g, 2, 2) == (0.0, [2])

    def test_square_two_sides(self):
        g = square_graph()
        length, path = shortest_path(g, 1, 3)
        assert length == 2.0
        assert path == [1, 0, 3]  # lexicographically before [1, 2, 3]

    def test_direct_edge(self):
        ps = PointSet.from_coords([(0, 0), (3, 0), (0, 4)])
        g = graph_from_triangulation(ps, delaunay(ps))
        length, path = shortest_path(g, 0, 1)
        assert length == 3.0 and path == [0, 1]

    def test_symmetry(self):
        # Reversed traversal sums the same weights in the opposite order, so
        # agreement is up to floating-point accumulation, not bitwise.
        g = random_graph(30, seed=5)
        rng = random.Random(0)
        for _ in range(40):
            u, v = rng.sample(range(30), 2)
            a = shortest_path(g, u, v)[0]
            b = shortest_path(g, v, u)[0]
            assert a == pytest.approx(b, rel=1e-12)

    def test_length_at_least_euclidean(self):
        g = random_graph(25, seed=6)
        for u in range(25):
            for v in range(u + 1, 25):
                length, _ = shortest_path(g, u, v)
                assert length >= dist(g.points[u], g.points[v]) - 1e-12

    def test_disconnected_raises(self):
        ps = PointSet.from_coords([(0, 0), (1, 0), (0, 1), (5, 5)])
        g = EuclideanGraph(points=ps, edges=((0, 1), (0, 2), (1, 2)))
        with pytest.raises(GeometryError):
            shortest_path(g, 0, 3)


class TestPairDilation:
    def test_adjacent_is_one(self):
        g = square_graph()
        assert pair_dilation(g, 0, 1) == 1.0

    def test_square_diagonal_pair(self):
        g = square_graph()
        assert pair_dilation(g, 1, 3) == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_chew_antipodal_closed_form(self):
        from delaunay_dilation.constructions import ChewSpec, generate_chew

        out = generate_chew(ChewSpec(1000))
        g = graph_from_triangulation(out.points, out.triangulation)
        got = pair_dilation(g, out.p, out.q)
        assert got == pytest.approx(500 * math.sin(math.pi / 1000), rel=1e-9)
        assert got == pytest.approx(1.5707938, abs=1e-5)

    def test_coincident_pair_rejected(self):
        g = square_graph()
        with pytest.raises(GeometryError):
            pair_dilation(g, 2, 2)


class TestMaxDilation:
    def test_single_triangle(self):
        ps = PointSet.from_coords([(0, 0), (3, 0), (0, 4)])
        rep = max_dilation(graph_from_triangulation(ps, delaunay(ps)))
        assert rep.max_dilation == 1.0

    def test_square_witness(self):
        rep = max_dilation(square_graph())
        assert rep.max_dilation == pytest.approx(math.sqrt(2), rel=1e-12)
        assert rep.witness == (1, 3)
        assert rep.witness_path == (1, 0, 3)

    def test_witness_path_consistency(self):
        g = random_graph(60, seed=8)
        rep = max_dilation(g)
        length = sum(
            dist(g.points[a], g.points[b])
            for a, b in zip(rep.witness_path, rep.witness_path[1:])
        )
        expect = rep.max_dilation * dist(g.points[rep.witness[0]], g.points[rep.witness[1]])
        assert abs(length - expect) <= 1e-12 * expect

    def test_matches_exhaustive_enumeration(self):
        for seed in range(40):
            n = random.Random(seed).randrange(4, 9)
            g = random_graph(n, seed=seed)
            rep = max_dilation(g)
            coords = [(p.x, p.y) for p in g.points]
            oracle_val, oracle_wit = exhaustive_max_dilation(coords, g.edges)
            assert rep.max_dilation == oracle_val
            assert rep.witness == oracle_wit

    def test_scale_and_translation_invariance(self):
        rng = random.Random(17)
        for _ in range(20):
            n = rng.randrange(10, 35)
            base = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(n)]
            a = rng.choice([-1, 1]) * rng.uniform(0.1, 10)
            b = (rng.uniform(-10, 10), rng.uniform(-10, 10))
            ps = PointSet.from_coords(base)
            moved = PointSet.from_coords([(a * x + b[0], a * y + b[1]) for x, y in base])
            d0 = max_dilation(graph_from_triangulation(ps, delaunay(ps))).max_dilation
            d1 = max_dilation(
                graph_from_triangulation(moved, delaunay(moved))
            ).max_dilation
            assert abs(d1 - d0) <= 1e-9 * d0

    def test_pairs_table(self):
        g = square_graph()
        rep = max_dilation(g, include_pairs=True)
        assert len(rep.pairs) == 6
        table = {(i, j): r for i, j, r in rep.pairs}
        assert table[(0, 1)] == 1.0
        assert table[(1, 3)] == rep.max_dilation
        csv = pairs_to_csv(rep)
        assert csv.splitlines()[0] == "i,j,dilation"
        assert len(csv.splitlines()) == 7

    def test_report_json(self):
        rep = max_dilation(square_graph())
        import json

        doc = json.loads(report_to_json(rep))
        assert doc["witness"] == [1, 3]
        assert doc["path"] == [1, 0, 3]

    def test_too_few_vertices(self):
        ps = PointSet.from_coords([(0, 0)])
        g = EuclideanGraph(points=ps, edges=())
        with pytest.raises(GeometryError):
            max_dilation(g)
