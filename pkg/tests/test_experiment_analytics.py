import os
import tempfile
from unittest import TestCase

import numpy as np
import pandas as pd

from community_gsp.src.analytics.experiment_analytics import ExperimentAnalytics
from community_gsp.src.analytics.sampling_report import paired_t_test
from community_gsp.src.dataset.fixtures import planted_hub, toy10
from community_gsp.src.filters.spectral_window import parse_filter_spec
from community_gsp.src.graph.graph import GraphSignal
from community_gsp.src.graph.shift_operator import OperatorKind
from community_gsp.src.spectral.spectrum_io import SpectrumCache
from community_gsp.src.surrogate.surrogates import SurrogateConfig
from utils.data_store.local_data_store import LocalDataStore


class TestExperimentAnalytics(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestExperimentAnalytics, self).__init__(*args, **kwargs)
        self.fixture = toy10()
        self.signal = GraphSignal(np.random.default_rng(61).normal(size=10), self.fixture.graph)

    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()
        self.data_store = LocalDataStore(os.path.join(self.folder.name, "results"))
        self.cache = SpectrumCache(LocalDataStore(os.path.join(self.folder.name, "cache")))

    def tearDown(self):
        self.folder.cleanup()

    def test_spectrum_report(self):
        result = ExperimentAnalytics.get_spectrum_report(self.data_store, self.cache, self.fixture.graph, "spectrum",
                                                         signal=self.signal)
        self.assertEqual(first=result["node_count"], second=10)
        self.assertEqual(first=result["edge_count"], second=16)
        self.assertEqual(first=result["modularity"]["zero"], second=1)
        self.assertEqual(first=result["laplacian"]["zero"], second=1)
        self.assertTrue(result["interlacing_holds"])
        self.assertLess(result["null_model_max_degree_deviation"], 1e-10)
        self.assertIn("signal_profile", result)
        self.assertEqual(first=self.data_store.list_files("spectrum"), second=[
            "cross_quadratic_forms.csv", "laplacian_eigenvalues.csv", "modularity_eigenvalues.csv",
            "null_model.csv"])
        eigenvalues = pd.read_csv(os.path.join(self.data_store.root, "spectrum", "modularity_eigenvalues.csv"))
        self.assertTrue(np.all(np.diff(eigenvalues["eigenvalue"].to_numpy()) <= 0))
        cross = pd.read_csv(os.path.join(self.data_store.root, "spectrum", "cross_quadratic_forms.csv"))
        smoothness = cross["laplacian_form_of_modularity_eigenvector"].to_numpy()
        self.assertTrue(np.all(smoothness >= -1e-10))
        # the only zero modularity eigenvalue belongs to the constant vector, which L annihilates
        zero = np.flatnonzero(np.abs(cross["modularity_eigenvalue"].to_numpy()) < 1e-9)
        self.assertEqual(first=len(zero), second=1)
        self.assertAlmostEqual(first=smoothness[zero[0]], second=0.0, delta=1e-10)
        self.assertTrue(np.all(np.delete(smoothness, zero) > 1e-10))

    def test_filtering_report(self):
        filter_specs = [parse_filter_spec(text) for text in ("modular", "antimodular", "smooth", "nonsmooth")]
        result = ExperimentAnalytics.get_filtering_report(self.data_store, self.cache, self.signal, filter_specs,
                                                          "filter", partition=self.fixture.partition,
                                                          nodes_of_interest=["1", "10", "missing"],
                                                          polynomial_coefficients=[0.0, 1.0])
        self.assertEqual(first=set(result["filters"]),
                         second={"modular", "antimodular", "smooth", "nonsmooth", "polynomial"})
        self.assertGreaterEqual(result["filters"]["modular"]["profile"]["modularity"], -1e-10)
        self.assertLessEqual(result["filters"]["antimodular"]["profile"]["modularity"], 1e-10)
        self.assertEqual(first=sorted(result["nodes_of_interest"]), second=["1", "10"])
        self.assertIn("z_out", result["nodes_of_interest"]["1"])
        frame = pd.read_csv(os.path.join(self.data_store.root, "filter", "filtered_signals.csv"),
                            dtype={"node_id": str})
        self.assertEqual(first=list(frame.columns), second=["node_id", "value", "modular", "antimodular", "smooth",
                                                            "nonsmooth", "polynomial"])
        self.assertTrue(self.data_store.exists("filter", "node_roles.csv"))

    def test_sampling_report_compares_operators(self):
        result = ExperimentAnalytics.get_sampling_report(self.data_store, self.cache, self.signal, "sample",
                                                         bandwidth=2, m=4, noise_variance=0.01, seed=5,
                                                         rank_tol=1e-10,
                                                         operators=[OperatorKind.LAPLACIAN, OperatorKind.MODULARITY])
        self.assertEqual(first=set(result["runs"]), second={"laplacian", "modularity"})
        self.assertEqual(first=result["runs"]["laplacian"]["m"], second=4)
        self.assertTrue(0.0 <= result["comparison"]["p_value"] <= 1.0)
        self.assertIn(result["comparison"]["lower_error"], ("laplacian", "modularity"))
        self.assertTrue(self.data_store.exists("sample", "sampling_set_modularity.csv"))
        repeated = ExperimentAnalytics.get_sampling_report(self.data_store, self.cache, self.signal, "sample",
                                                           bandwidth=2, m=4, noise_variance=0.01, seed=5,
                                                           rank_tol=1e-10, operators=[OperatorKind.LAPLACIAN])
        self.assertEqual(first=repeated["runs"]["laplacian"]["mse_mean"],
                         second=result["runs"]["laplacian"]["mse_mean"])
        self.assertNotIn("comparison", repeated)

    def test_paired_t_test(self):
        self.assertEqual(first=paired_t_test([1.0, 2.0], [1.0, 2.0]), second=(0.0, 1.0))
        t_statistic, p_value = paired_t_test([1.0, 2.0, 3.5, 4.0], [0.5, 1.0, 3.0, 3.0])
        self.assertGreater(t_statistic, 0)
        self.assertLess(p_value, 0.05)

    def test_surrogate_report(self):
        fixture = planted_hub()
        signal = GraphSignal(fixture.graph.degrees - fixture.graph.degrees.mean(), fixture.graph)
        configs = [SurrogateConfig(mode=mode, count=50, seed=9) for mode in ("modular_only", "all_laplacian")]
        result = ExperimentAnalytics.get_surrogate_report(self.data_store, self.cache, signal, configs, "surrogate",
                                                          partition=fixture.partition)
        self.assertEqual(first=set(result), second={"modular_only", "all_laplacian"})
        self.assertEqual(first=result["modular_only"]["count"], second=50)
        self.assertIn("significant_roles", result["modular_only"])
        self.assertTrue(self.data_store.exists("surrogate", "surrogate_all_laplacian.csv"))

    def test_denoising_report(self):
        result = ExperimentAnalytics.get_denoising_report(self.data_store, self.cache, self.signal, "denoise",
                                                          noise_variances=[0.01, 0.5], mu_grid=np.logspace(-2, 2, 9),
                                                          seed=3, realizations=2,
                                                          regularizers=[OperatorKind.LAPLACIAN,
                                                                        OperatorKind.MODULARITY_PLUS,
                                                                        OperatorKind.MODULARITY_MINUS])
        self.assertEqual(first=sorted(result), second=["0.01", "0.5"])
        summary = result["0.5"]
        self.assertEqual(first=sorted(summary["ranking"]),
                         second=["laplacian", "modularity_minus", "modularity_plus"])
        self.assertGreaterEqual(summary["worst_to_best_ratio"], 1.0)
        self.assertTrue(self.data_store.exists("denoise", "sweep_modularity_plus_sigma2_0.5.csv"))
