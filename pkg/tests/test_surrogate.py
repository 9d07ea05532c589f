from unittest import TestCase

import numpy as np

from community_gsp.src.dataset.fixtures import k3
from community_gsp.src.errors import ConfigurationError
from community_gsp.src.graph.graph import GraphSignal
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator, quadratic_form
from community_gsp.src.spectral.spectral_basis import decompose
from community_gsp.src.surrogate.surrogates import Correction, SurrogateConfig, SurrogateMode, Tail, \
    flippable_components, generate_surrogate, surrogate_from_signs, surrogate_test
from tests.random_graphs import random_graph, random_signal


class TestSurrogates(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestSurrogates, self).__init__(*args, **kwargs)
        self.rng = np.random.default_rng(41)
        self.graph = random_graph(self.rng, 24, weighted=True)
        self.modularity = decompose(ShiftOperator(OperatorKind.MODULARITY, self.graph))
        self.laplacian = decompose(ShiftOperator(OperatorKind.LAPLACIAN, self.graph))

    def test_modularity_surrogates_keep_norm_and_modularity(self):
        q = ShiftOperator(OperatorKind.MODULARITY, self.graph)
        x = random_signal(self.rng, self.graph)
        for mode in (SurrogateMode.ALL_MODULARITY, SurrogateMode.MODULAR_ONLY, SurrogateMode.ANTI_MODULAR_ONLY):
            for _ in range(20):
                surrogate = generate_surrogate(self.modularity, x, mode, self.rng)
                self.assertAlmostEqual(first=surrogate.norm(), second=x.norm(), delta=1e-10)
                self.assertAlmostEqual(first=quadratic_form(q, surrogate), second=quadratic_form(q, x), delta=1e-9)

    def test_laplacian_surrogates_keep_smoothness(self):
        laplacian = ShiftOperator(OperatorKind.LAPLACIAN, self.graph)
        x = random_signal(self.rng, self.graph)
        for _ in range(20):
            surrogate = generate_surrogate(self.laplacian, x, SurrogateMode.ALL_LAPLACIAN, self.rng)
            self.assertAlmostEqual(first=quadratic_form(laplacian, surrogate), second=quadratic_form(laplacian, x),
                                   delta=1e-9)

    def test_modular_only_keeps_other_components(self):
        x = random_signal(self.rng, self.graph)
        surrogate = generate_surrogate(self.modularity, x, SurrogateMode.MODULAR_ONLY, self.rng)
        mask = flippable_components(self.modularity, SurrogateMode.MODULAR_ONLY)
        original = self.modularity.eigenvectors.T @ x.values
        flipped = self.modularity.eigenvectors.T @ surrogate.values
        np.testing.assert_allclose(flipped[~mask], original[~mask], atol=1e-10)
        np.testing.assert_allclose(np.abs(flipped[mask]), np.abs(original[mask]), atol=1e-10)

    def test_identity_signs_reproduce_signal(self):
        x = random_signal(self.rng, self.graph)
        np.testing.assert_allclose(surrogate_from_signs(self.modularity, x, np.ones(self.graph.n)).values, x.values,
                                   atol=1e-12)
        with self.assertRaises(ConfigurationError):
            surrogate_from_signs(self.modularity, x, np.zeros(self.graph.n))

    def test_mode_needs_matching_basis(self):
        with self.assertRaises(ConfigurationError):
            flippable_components(self.laplacian, SurrogateMode.MODULAR_ONLY)
        with self.assertRaises(ConfigurationError):
            flippable_components(self.modularity, SurrogateMode.ALL_LAPLACIAN)


class TestSurrogateTest(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestSurrogateTest, self).__init__(*args, **kwargs)
        self.rng = np.random.default_rng(42)

    def test_no_flippable_component_gives_unit_p_values(self):
        fixture = k3()
        basis = decompose(ShiftOperator(OperatorKind.MODULARITY, fixture.graph))
        x = GraphSignal([1.0, -2.0, 1.0], fixture.graph)
        result = surrogate_test(basis, x, SurrogateConfig(mode=SurrogateMode.MODULAR_ONLY, count=1, seed=3))
        np.testing.assert_array_equal(result.p_values, np.ones(3))
        self.assertEqual(first=result.significant_count, second=0)
        self.assertEqual(first=result.realizations_used, second=1)

    def test_results_do_not_depend_on_chunks_or_workers(self):
        graph = random_graph(self.rng, 20)
        basis = decompose(ShiftOperator(OperatorKind.MODULARITY, graph))
        x = random_signal(self.rng, graph)
        reference = surrogate_test(basis, x, SurrogateConfig(mode="all_modularity", count=200, seed=7))
        repeated = surrogate_test(basis, x, SurrogateConfig(mode="all_modularity", count=200, seed=7))
        chunked = surrogate_test(basis, x, SurrogateConfig(mode="all_modularity", count=200, seed=7, chunk_size=13,
                                                           workers=3))
        other_seed = surrogate_test(basis, x, SurrogateConfig(mode="all_modularity", count=200, seed=8))
        np.testing.assert_array_equal(reference.p_values, repeated.p_values)
        np.testing.assert_array_equal(reference.p_values, chunked.p_values)
        self.assertFalse(np.array_equal(reference.p_values, other_seed.p_values))

    def test_planted_spike_is_significant(self):
        graph = random_graph(self.rng, 40, p=0.2)
        basis = decompose(ShiftOperator(OperatorKind.MODULARITY, graph))
        values = 0.01 * self.rng.normal(size=graph.n)
        values[0] += 10.0
        cfg = SurrogateConfig(mode=SurrogateMode.ALL_MODULARITY, count=999, seed=1, alpha=0.05,
                              correction=Correction.BONFERRONI)
        result = surrogate_test(basis, GraphSignal(values, graph), cfg)
        self.assertAlmostEqual(first=result.threshold, second=0.05 / 40)
        self.assertAlmostEqual(first=result.p_values[0], second=1.0 / 1000.0)
        self.assertTrue(result.significant[0])
        np.testing.assert_allclose(result.adjusted_p_values, np.minimum(1.0, 40 * result.p_values))

    def test_p_values_are_bounded(self):
        graph = random_graph(self.rng, 15)
        basis = decompose(ShiftOperator(OperatorKind.LAPLACIAN, graph))
        x = random_signal(self.rng, graph)
        for tail in Tail:
            result = surrogate_test(basis, x, SurrogateConfig(mode="all_laplacian", count=99, seed=2, tail=tail,
                                                              correction=Correction.NONE))
            self.assertTrue(np.all(result.p_values >= 1.0 / 100.0))
            self.assertTrue(np.all(result.p_values <= 1.0))
            self.assertEqual(first=result.threshold, second=0.05)
            np.testing.assert_array_equal(result.adjusted_p_values, result.p_values)
            frame = result.to_frame(x)
            self.assertEqual(first=list(frame.columns), second=["node_id", "value", "p_value", "adjusted_p_value",
                                                                "significant"])

    def test_unattainable_threshold_warns(self):
        graph = random_graph(self.rng, 30)
        basis = decompose(ShiftOperator(OperatorKind.MODULARITY, graph))
        with self.assertLogs("surrogates", level="WARNING"):
            result = surrogate_test(basis, random_signal(self.rng, graph),
                                    SurrogateConfig(mode="all_modularity", count=10, seed=4))
        self.assertEqual(first=result.significant_count, second=0)

    def test_config_validation(self):
        with self.assertRaises(ConfigurationError):
            SurrogateConfig(mode="shuffle")
        with self.assertRaises(ConfigurationError):
            SurrogateConfig(count=0)
        with self.assertRaises(ConfigurationError):
            SurrogateConfig(alpha=1.0)
        with self.assertRaises(ConfigurationError):
            SurrogateConfig(workers=0)
        with self.assertRaises(ConfigurationError):
            SurrogateConfig(tail="lower")
        self.assertEqual(first=SurrogateConfig(correction="none").correction, second=Correction.NONE)
