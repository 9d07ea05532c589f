from unittest import TestCase

import numpy as np

from community_gsp.src.community.metrics import cut_size, spectral_bipartition, z_scores
from community_gsp.src.community.partition import Partition
from community_gsp.src.dataset.fixtures import barbell6, k3, planted_hub, toy10
from community_gsp.src.errors import ConfigurationError, InvalidPartitionError
from community_gsp.src.graph.graph import Graph
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator, modularity_index
from community_gsp.src.spectral.spectral_basis import decompose


class TestPartition(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestPartition, self).__init__(*args, **kwargs)

    def test_from_assignments_orders_communities(self):
        graph = barbell6().graph
        assignments = {node_id: "right" if int(node_id) > 3 else "left" for node_id in graph.node_ids}
        partition = Partition.from_assignments(graph, assignments)
        self.assertEqual(first=partition.names, second=("left", "right"))
        ordered = Partition.from_assignments(graph, assignments, order=["right", "left", "unused"])
        self.assertEqual(first=ordered.names, second=("right", "left"))
        self.assertEqual(first=ordered.name_of(0), second="left")
        np.testing.assert_array_equal(ordered.members(0), [3, 4, 5])

    def test_invalid_partitions(self):
        graph = barbell6().graph
        with self.assertRaises(InvalidPartitionError):
            Partition.from_assignments(graph, {"1": "left"})
        with self.assertRaises(InvalidPartitionError):
            Partition([0, 2, 2])
        with self.assertRaises(InvalidPartitionError):
            Partition([])
        with self.assertRaises(InvalidPartitionError):
            Partition([0, 1], names=["x", "x"])
        with self.assertRaises(InvalidPartitionError):
            Partition.from_assignments(graph, {node_id: "left" for node_id in graph.node_ids}, order=["right"])

    def test_from_sign_vector(self):
        partition = Partition.from_sign_vector([1, -1, -1, 1])
        np.testing.assert_array_equal(partition.labels, [0, 1, 1, 0])
        self.assertEqual(first=Partition.from_sign_vector([1, 1]).community_count, second=1)
        with self.assertRaises(InvalidPartitionError):
            Partition.from_sign_vector([1, 0])

    def test_relabeled(self):
        partition = Partition([0, 0, 1, 2], names=["a", "b", "c"])
        relabeled = partition.relabeled([2, 0, 1])
        np.testing.assert_array_equal(relabeled.labels, [2, 2, 0, 1])
        self.assertEqual(first=[relabeled.name_of(i) for i in range(4)], second=["a", "a", "b", "c"])


class TestCommunityMetrics(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestCommunityMetrics, self).__init__(*args, **kwargs)

    def test_cut_size_of_triangle(self):
        self.assertAlmostEqual(first=cut_size(k3().graph, [1, 1, -1]), second=2.0)
        self.assertAlmostEqual(first=cut_size(k3().graph, [1, 1, 1]), second=0.0)

    def test_barbell_split(self):
        graph = barbell6().graph
        s = [1, 1, 1, -1, -1, -1]
        self.assertAlmostEqual(first=cut_size(graph, s), second=1.0)
        # M times the usual normalized modularity 5/14 of the two triangles
        self.assertAlmostEqual(first=modularity_index(graph, s), second=2.5)

    def test_toy_bipartitions(self):
        fixture = toy10()
        clique = np.arange(10) < 5
        modular = spectral_bipartition(decompose(ShiftOperator(OperatorKind.MODULARITY, fixture.graph)))
        self.assertTrue(np.all(modular[clique] == modular[0]) and np.all(modular[~clique] == -modular[0]))
        fiedler = spectral_bipartition(decompose(ShiftOperator(OperatorKind.LAPLACIAN, fixture.graph)))
        head = np.arange(10) < 7
        self.assertTrue(np.all(fiedler[head] == fiedler[0]) and np.all(fiedler[~head] == -fiedler[0]))
        self.assertGreater(modularity_index(fixture.graph, modular), modularity_index(fixture.graph, fiedler))

    def test_modular_bipartition_beats_random_splits(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            n = int(rng.integers(12, 30))
            side = rng.random(n) < 0.5
            edges = [(str(i), str(i + 1)) for i in range(n - 1)]
            for i in range(n):
                for j in range(i + 2, n):
                    if rng.random() < (0.6 if side[i] == side[j] else 0.05):
                        edges.append((str(i), str(j)))
            graph = Graph.from_edges(edges, node_ids=[str(i) for i in range(n)])
            split = spectral_bipartition(decompose(ShiftOperator(OperatorKind.MODULARITY, graph)))
            random_indices = [modularity_index(graph, rng.choice([-1.0, 1.0], size=n)) for _ in range(101)]
            self.assertGreaterEqual(modularity_index(graph, split), np.median(random_indices))

    def test_bipartition_needs_supported_basis(self):
        graph = barbell6().graph
        with self.assertRaises(ConfigurationError):
            spectral_bipartition(decompose(ShiftOperator(OperatorKind.ADJACENCY, graph)))

    def test_planted_hub_has_largest_outside_score(self):
        fixture = planted_hub()
        scores = z_scores(fixture.graph, fixture.partition)
        community_a = fixture.partition.members(0)
        hub = fixture.graph.index_of("h")
        self.assertEqual(first=community_a[np.argmax(scores.z_out[community_a])], second=hub)
        self.assertEqual(first=scores.k_out[hub], second=4.0)
        self.assertEqual(first=scores.k_in[hub], second=0.0)
        np.testing.assert_allclose(scores.k_in + scores.k_out, fixture.graph.degrees)

    def test_z_scores_ignore_community_labels(self):
        fixture = planted_hub()
        scores = z_scores(fixture.graph, fixture.partition)
        relabeled = z_scores(fixture.graph, fixture.partition.relabeled([1, 0]))
        np.testing.assert_array_equal(scores.z_in, relabeled.z_in)
        np.testing.assert_array_equal(scores.z_out, relabeled.z_out)

    def test_undefined_scores_are_nan(self):
        fixture = k3()
        scores = z_scores(fixture.graph, fixture.partition)
        self.assertFalse(np.any(scores.z_in_defined))
        frame = scores.to_frame(fixture.graph, fixture.partition)
        self.assertEqual(first=list(frame.columns), second=["node_id", "community", "k_in", "k_out", "z_in",
                                                           "z_out"])

    def test_partition_size_mismatch(self):
        with self.assertRaises(InvalidPartitionError):
            z_scores(toy10().graph, Partition([0, 1]))
