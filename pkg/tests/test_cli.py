import json
import os
import tempfile
from unittest import TestCase

import numpy as np

from community_gsp.deployment.cli import SUMMARY_FILENAME, main
from community_gsp.src.dataset.fixtures import make_fixture
from community_gsp.src.dataset.graph_files import write_edge_list, write_partition, write_signal
from community_gsp.src.errors import EXIT_CODE_CONFIGURATION, EXIT_CODE_DATA, EXIT_CODE_SUCCESS
from community_gsp.src.graph.graph import GraphSignal

OPENFLIGHTS_FOLDER = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "openflights")


class TestCli(TestCase):

    def __init__(self, *args, **kwargs):
        super(TestCli, self).__init__(*args, **kwargs)

    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()
        self.out_dir = os.path.join(self.folder.name, "results")
        self.cache_dir = os.path.join(self.folder.name, "cache")
        fixture = make_fixture("toy10")
        self.edges = write_edge_list(os.path.join(self.folder.name, "edges.csv"), fixture.graph)
        self.partition = write_partition(os.path.join(self.folder.name, "partition.csv"), fixture.partition,
                                         fixture.graph)
        signal = GraphSignal(np.random.default_rng(71).normal(size=fixture.graph.n), fixture.graph)
        self.signal = write_signal(os.path.join(self.folder.name, "signal.csv"), signal)

    def tearDown(self):
        self.folder.cleanup()

    def _run(self, *argv):
        return main(["--out-dir", self.out_dir, "--cache-dir", self.cache_dir] + list(argv))

    def _summary(self, command):
        with open(os.path.join(self.out_dir, command, SUMMARY_FILENAME), "r", encoding="utf-8") as fp:
            return json.load(fp)

    def test_fixture_command(self):
        self.assertEqual(first=self._run("fixture", "toy10", "k3"), second=EXIT_CODE_SUCCESS)
        summary = self._summary("fixture")
        self.assertEqual(first=sorted(summary["result"]), second=["k3", "toy10"])
        self.assertEqual(first=summary["result"]["toy10"]["edge_count"], second=16)
        self.assertTrue(os.path.isfile(summary["result"]["k3"]["edges"]))
        self.assertEqual(first=summary["config"]["fixture"]["names"], second=["toy10", "k3"])

    def test_spectrum_command_echoes_config(self):
        self.assertEqual(first=self._run("--seed", "17", "spectrum", "--edges", self.edges), second=EXIT_CODE_SUCCESS)
        summary = self._summary("spectrum")
        self.assertEqual(first=summary["command"], second="spectrum")
        self.assertEqual(first=summary["config"]["global"]["seed"], second=17)
        self.assertEqual(first=summary["config"]["spectrum"]["edges"], second=self.edges)
        self.assertEqual(first=summary["result"]["modularity"]["zero"], second=1)
        self.assertTrue(os.path.isdir(os.path.join(self.cache_dir, "spectra")))

    def test_filter_command(self):
        code = self._run("filter", "--edges", self.edges, "--signal", self.signal, "--partition", self.partition,
                         "--filter", "modular", "--filter", "band:1:3:flat", "--nodes-of-interest", "1,8")
        self.assertEqual(first=code, second=EXIT_CODE_SUCCESS)
        result = self._summary("filter")["result"]
        self.assertEqual(first=sorted(result["filters"]), second=["band:1:3:flat", "modular"])
        self.assertEqual(first=sorted(result["nodes_of_interest"]), second=["1", "8"])
        self.assertIn("delta_c", result["filters"]["modular"])

    def test_config_file_sections(self):
        config_path = os.path.join(self.folder.name, "run.json")
        with open(config_path, "w", encoding="utf-8") as fp:
            json.dump({"global": {"seed": 5}, "denoise": {"edges": self.edges, "signal": self.signal,
                                                          "noise_variances": [0.1], "mu_count": 5}}, fp)
        self.assertEqual(first=self._run("--config", config_path, "denoise", "--realizations", "2"),
                         second=EXIT_CODE_SUCCESS)
        config = self._summary("denoise")["config"]
        self.assertEqual(first=config["global"]["seed"], second=5)
        self.assertEqual(first=config["denoise"]["realizations"], second=2)
        self.assertEqual(first=config["denoise"]["mu_count"], second=5)

    def test_configuration_errors(self):
        self.assertEqual(first=self._run("--config", os.path.join(self.folder.name, "absent.json"), "fixture"),
                         second=EXIT_CODE_CONFIGURATION)
        self.assertEqual(first=self._run("sample", "--edges", self.edges, "--signal", self.signal, "--bandwidth", "0"),
                         second=EXIT_CODE_CONFIGURATION)
        self.assertEqual(first=self._run("filter", "--edges", self.edges, "--signal", self.signal, "--filter",
                                         "lowpass"), second=EXIT_CODE_CONFIGURATION)
        self.assertEqual(first=self._run("fixture", "petersen"), second=EXIT_CODE_CONFIGURATION)
        config_path = os.path.join(self.folder.name, "extra.json")
        with open(config_path, "w", encoding="utf-8") as fp:
            json.dump({"fixture": {"names": ["k3"], "colour": "blue"}}, fp)
        self.assertEqual(first=self._run("--config", config_path, "fixture"), second=EXIT_CODE_CONFIGURATION)

    def test_data_errors(self):
        self.assertEqual(first=self._run("spectrum", "--edges", os.path.join(self.folder.name, "absent.csv")),
                         second=EXIT_CODE_DATA)
        malformed = os.path.join(self.folder.name, "malformed.csv")
        with open(malformed, "w", encoding="utf-8") as fp:
            fp.write("1,2\n2,3,x\n")
        self.assertEqual(first=self._run("spectrum", "--edges", malformed), second=EXIT_CODE_DATA)
        self.assertFalse(os.path.isfile(os.path.join(self.out_dir, "spectrum", SUMMARY_FILENAME)))

    def test_broken_continent_table(self):
        table = os.path.join(self.folder.name, "continents.csv")
        with open(table, "w", encoding="utf-8") as fp:
            fp.write("nation,continent\nFrance,Europe\n")
        code = self._run("ingest-openflights", "--airports", os.path.join(OPENFLIGHTS_FOLDER, "airports.dat"),
                         "--routes", os.path.join(OPENFLIGHTS_FOLDER, "routes.dat"), "--continent-table", table)
        self.assertEqual(first=code, second=EXIT_CODE_DATA)
