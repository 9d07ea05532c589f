from unittest import TestCase

import numpy as np

from community_gsp.src.denoise.tikhonov import REGULARIZER_KINDS, DenoiseProblem, denoise, objective, \
    oracle_select, regularizer_basis, rms_error
from community_gsp.src.errors import ConfigurationError, InvalidParameterError
from community_gsp.src.graph.graph import GraphSignal
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator
from community_gsp.src.spectral.spectral_basis import build_shift_operator, decompose
from tests.random_graphs import random_graph, random_signal


class TestTikhonov(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestTikhonov, self).__init__(*args, **kwargs)
        self.rng = np.random.default_rng(51)
        self.graph = random_graph(self.rng, 18, weighted=True)
        self.modularity = decompose(ShiftOperator(OperatorKind.MODULARITY, self.graph))

    def test_zero_mu_returns_input(self):
        y = random_signal(self.rng, self.graph)
        for kind in REGULARIZER_KINDS:
            x = denoise(DenoiseProblem(y=y, regularizer=kind, mu=0.0), basis=self.modularity
                        if kind.is_shifted else None)
            np.testing.assert_allclose(x.values, y.values, atol=1e-12)

    def test_matches_dense_solve_and_is_stationary(self):
        y = random_signal(self.rng, self.graph)
        for kind in REGULARIZER_KINDS:
            op = build_shift_operator(self.graph, kind, modularity_basis=self.modularity)
            for mu in (0.01, 0.7, 25.0):
                x = denoise(DenoiseProblem(y=y, regularizer=kind, mu=mu))
                expected = np.linalg.solve(np.eye(self.graph.n) + mu * op.to_dense(), y.values)
                np.testing.assert_allclose(x.values, expected, atol=1e-9)
                gradient = (x.values - y.values) + mu * op.matvec(x.values)
                np.testing.assert_allclose(gradient, 0.0, atol=1e-8)

    def test_solution_minimizes_objective(self):
        y = random_signal(self.rng, self.graph)
        for kind in REGULARIZER_KINDS:
            op = build_shift_operator(self.graph, kind, modularity_basis=self.modularity)
            x = denoise(DenoiseProblem(y=y, regularizer=kind, mu=0.5), basis=self.modularity
                        if kind.is_shifted else None)
            best = objective(y, x, op, 0.5)
            self.assertLessEqual(best, objective(y, y, op, 0.5) + 1e-10)
            for _ in range(10):
                perturbed = x.with_values(x.values + 0.01 * self.rng.normal(size=self.graph.n))
                self.assertLessEqual(best, objective(y, perturbed, op, 0.5) + 1e-10)

    def test_norm_shrinks_with_mu(self):
        y = random_signal(self.rng, self.graph)
        for kind in REGULARIZER_KINDS:
            basis = regularizer_basis(self.graph, kind, self.modularity if kind.is_shifted else None)
            norms = [denoise(DenoiseProblem(y=y, regularizer=kind, mu=mu), basis=basis).norm()
                     for mu in np.logspace(-3, 3, 13)]
            self.assertTrue(np.all(np.diff(norms) <= 1e-12))

    def test_large_mu_limits(self):
        y = random_signal(self.rng, self.graph)
        plus = denoise(DenoiseProblem(y=y, regularizer=OperatorKind.MODULARITY_PLUS, mu=1e8), basis=self.modularity)
        leading = self.modularity.eigenvectors[:, 0]
        np.testing.assert_allclose(plus.values, (leading @ y.values) * leading, atol=1e-5)
        laplacian = denoise(DenoiseProblem(y=y, regularizer=OperatorKind.LAPLACIAN, mu=1e8))
        np.testing.assert_allclose(laplacian.values, np.full(self.graph.n, y.values.mean()), atol=1e-5)

    def test_invalid_problems(self):
        y = random_signal(self.rng, self.graph)
        with self.assertRaises(InvalidParameterError):
            DenoiseProblem(y=y, regularizer=OperatorKind.LAPLACIAN, mu=-1.0)
        with self.assertRaises(InvalidParameterError):
            DenoiseProblem(y=y, regularizer=OperatorKind.LAPLACIAN, mu=np.inf)
        with self.assertRaises(ConfigurationError):
            DenoiseProblem(y=y, regularizer=OperatorKind.MODULARITY, mu=1.0)
        with self.assertRaises(ConfigurationError):
            DenoiseProblem(y=y, regularizer="ridge", mu=1.0)
        laplacian = decompose(ShiftOperator(OperatorKind.LAPLACIAN, self.graph))
        with self.assertRaises(ConfigurationError):
            regularizer_basis(self.graph, OperatorKind.MODULARITY_PLUS, laplacian)


class TestOracleSelection(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestOracleSelection, self).__init__(*args, **kwargs)
        self.rng = np.random.default_rng(52)

    def test_noise_free_input_picks_smallest_mu(self):
        graph = random_graph(self.rng, 12)
        y = random_signal(self.rng, graph)
        sweep = oracle_select(y, y, OperatorKind.LAPLACIAN, mu_grid=[10.0, 0.1, 1.0])
        np.testing.assert_array_equal(sweep.mu_grid, [0.1, 1.0, 10.0])
        self.assertEqual(first=sweep.best_mu, second=0.1)
        self.assertTrue(np.all(np.diff(sweep.per_mu_rms) > 0))
        self.assertEqual(first=list(sweep.to_frame().columns), second=["mu", "rms"])

    def test_smooth_truth_benefits_from_laplacian(self):
        graph = random_graph(self.rng, 30, p=0.15)
        laplacian = decompose(ShiftOperator(OperatorKind.LAPLACIAN, graph))
        truth = GraphSignal(laplacian.eigenvectors[:, :3] @ np.array([0.0, 1.0, 0.5]), graph)
        y = truth.with_values(truth.values + 0.1 * self.rng.normal(size=graph.n))
        sweep = oracle_select(y, truth, OperatorKind.LAPLACIAN, basis=laplacian)
        self.assertLess(sweep.best_rms, rms_error(y, truth))
        self.assertAlmostEqual(first=sweep.best_rms, second=rms_error(sweep.best_signal, truth))

    def test_invalid_grid(self):
        graph = random_graph(self.rng, 6)
        y = random_signal(self.rng, graph)
        for grid in ([], [0.0, 1.0], [1.0, np.nan]):
            with self.assertRaises(InvalidParameterError):
                oracle_select(y, y, OperatorKind.LAPLACIAN, mu_grid=grid)

    def test_rms_is_per_node(self):
        graph = random_graph(self.rng, 4)
        zero = random_signal(self.rng, graph).with_values(np.zeros(4))
        self.assertAlmostEqual(first=rms_error(zero.with_values([2.0, 2.0, 2.0, 2.0]), zero), second=2.0)
