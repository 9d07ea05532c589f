import argparse
import json
import os
import sys

import numpy as np
from pydantic import ValidationError

from config import *
from community_gsp.deployment.cli_models import COMMAND_MODELS, GlobalConfig
from community_gsp.src.analytics.experiment_analytics import ExperimentAnalytics
from community_gsp.src.dataset.fixtures import make_fixture
from community_gsp.src.dataset.graph_files import read_edge_list, read_partition, read_signal, write_edge_list, \
    write_partition, write_signal
from community_gsp.src.dataset.openflights import ContinentTable, FlightsGraphOptions, build_flights_graph
from community_gsp.src.errors import EXIT_CODE_DATA, EXIT_CODE_SUCCESS, CommunityGSPError, ConfigurationError
from community_gsp.src.filters.spectral_window import parse_filter_spec
from community_gsp.src.spectral.spectrum_io import SpectrumCache
from community_gsp.src.surrogate.surrogates import SurrogateConfig
from utils.data_store.local_data_store import LocalDataStore
from utils.logger.pylogger import get_logger

logger = get_logger("cli", LOGGING_LEVEL)

SUMMARY_FILENAME = "summary.json"


def _comma_list(cast):
    def parse(text):
        try:
            return [cast(item.strip()) for item in text.split(",") if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError("cannot parse '{text}'".format(text=text))

    return parse


def _add_graph_arguments(parser, signal=True, partition=True):
    parser.add_argument("--edges", help="edge list file (src,dst[,weight])")
    if signal:
        parser.add_argument("--signal", help="signal file (node_id,value)")
    if partition:
        parser.add_argument("--partition", help="partition file (node_id,community)")


def build_parser():
    parser = argparse.ArgumentParser(prog="community_gsp",
                                     description="Community-aware graph signal processing with the modularity "
                                                 "matrix as shift operator")
    parser.add_argument("--seed", type=int, help="master random seed")
    parser.add_argument("--config", help="JSON file with a 'global' section and one section per command")
    parser.add_argument("--out-dir", dest="out_dir", help="folder receiving the results")
    parser.add_argument("--cache-dir", dest="cache_dir", help="folder of the eigendecomposition cache")
    commands = parser.add_subparsers(dest="command", required=True)

    spectrum = commands.add_parser("spectrum", help="L and Q eigenspectra, cross quadratic forms, null model")
    _add_graph_arguments(spectrum)

    filtering = commands.add_parser("filter", help="modular, anti-modular, smooth and non-smooth filtering")
    _add_graph_arguments(filtering)
    filtering.add_argument("--filter", dest="filters", action="append",
                           help="modular | antimodular | smooth | nonsmooth | band:N1:N2:flat|absweighted")
    filtering.add_argument("--band-operator", dest="band_operator", help="operator of explicit band filters")
    filtering.add_argument("--polynomial", type=_comma_list(float), help="comma separated h_0,...,h_K")
    filtering.add_argument("--polynomial-operator", dest="polynomial_operator")
    filtering.add_argument("--nodes-of-interest", dest="nodes_of_interest", type=_comma_list(str))

    sampling = commands.add_parser("sample", help="optimal sampling and reconstruction of a bandlimited signal")
    _add_graph_arguments(sampling, partition=False)
    sampling.add_argument("--operator", dest="operators", action="append", help="laplacian or modularity")
    sampling.add_argument("--compare", dest="operators", action="store_const", const=["laplacian", "modularity"],
                          help="run both operators and compare their errors")
    sampling.add_argument("--bandwidth", type=int)
    sampling.add_argument("--m", type=int, help="number of sampled nodes")
    sampling.add_argument("--noise-variance", dest="noise_variance", type=float)
    sampling.add_argument("--rank-tol", dest="rank_tol", type=float)

    surrogate = commands.add_parser("surrogate", help="node-wise tests against sign-randomized surrogates")
    _add_graph_arguments(surrogate)
    surrogate.add_argument("--mode", dest="modes", action="append",
                           help="all_laplacian | all_modularity | modular_only | anti_modular_only")
    surrogate.add_argument("--count", type=int)
    surrogate.add_argument("--alpha", type=float)
    surrogate.add_argument("--correction", help="bonferroni | none")
    surrogate.add_argument("--tail", help="upper | two_sided")
    surrogate.add_argument("--chunk-size", dest="chunk_size", type=int)
    surrogate.add_argument("--workers", type=int)

    denoising = commands.add_parser("denoise", help="Tikhonov denoising with L, Q+ and Q- regularizers")
    _add_graph_arguments(denoising, partition=False)
    denoising.add_argument("--noise-variance", dest="noise_variances", type=float, action="append")
    denoising.add_argument("--regularizer", dest="regularizers", action="append",
                           help="laplacian | modularity_plus | modularity_minus")
    denoising.add_argument("--mu-min", dest="mu_min", type=float)
    denoising.add_argument("--mu-max", dest="mu_max", type=float)
    denoising.add_argument("--mu-count", dest="mu_count", type=int)
    denoising.add_argument("--realizations", type=int)

    ingest = commands.add_parser("ingest-openflights", help="airports.dat + routes.dat to graph, signal, partition")
    ingest.add_argument("--airports")
    ingest.add_argument("--routes")
    ingest.add_argument("--keep-all-components", dest="restrict_to_largest_component", action="store_const",
                        const=False)
    ingest.add_argument("--strict-continents", dest="drop_unmappable_continent", action="store_const", const=False,
                        help="fail on airports without a continent instead of dropping them")
    ingest.add_argument("--continent-table", dest="continent_table")
    ingest.add_argument("--timezone-table", dest="timezone_table")

    fixture = commands.add_parser("fixture", help="write the canonical test graphs")
    fixture.add_argument("names", nargs="*", help="toy10 | k3 | barbell6 | planted_hub (default: all)")
    return parser


def _load_config_file(path):
    if path is None:
        return dict()
    try:
        with open(path, "r", encoding="utf-8") as fp:
            contents = json.load(fp)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError("cannot read config file {path}: {e}".format(path=path, e=e))
    if not isinstance(contents, dict):
        raise ConfigurationError("config file {path} must hold a JSON object".format(path=path))
    return contents


def _validate(model, section, overrides):
    values = dict(section)
    values.update({key: value for key, value in overrides.items()
                   if key in model.model_fields and value is not None and value != []})
    try:
        return model.model_validate(values)
    except ValidationError as e:
        raise ConfigurationError("invalid {name}: {e}".format(name=model.__name__, e=e))


def resolve_config(args):
    """(global config, command config) from the config file, overridden by explicit flags."""
    contents = _load_config_file(args.config)
    overrides = vars(args)
    global_cfg = _validate(GlobalConfig, contents.get("global", dict()), overrides)
    command_cfg = _validate(COMMAND_MODELS[args.command], contents.get(args.command, dict()), overrides)
    return global_cfg, command_cfg


def _load_inputs(cfg):
    graph = read_edge_list(cfg.edges)
    signal = read_signal(cfg.signal, graph) if cfg.signal else None
    partition = read_partition(cfg.partition, graph) if cfg.partition else None
    return graph, signal, partition


def run_spectrum(global_cfg, cfg, data_store, cache):
    graph, signal, _ = _load_inputs(cfg)
    return ExperimentAnalytics.get_spectrum_report(data_store, cache, graph, "spectrum", signal=signal)


def run_filter(global_cfg, cfg, data_store, cache):
    _, signal, partition = _load_inputs(cfg)
    return ExperimentAnalytics.get_filtering_report(
        data_store, cache, signal, [parse_filter_spec(text) for text in cfg.filters], "filter", partition=partition,
        nodes_of_interest=cfg.nodes_of_interest, band_operator=cfg.band_operator,
        polynomial_coefficients=cfg.polynomial, polynomial_operator=cfg.polynomial_operator)


def run_sample(global_cfg, cfg, data_store, cache):
    _, signal, _ = _load_inputs(cfg)
    return ExperimentAnalytics.get_sampling_report(data_store, cache, signal, "sample", bandwidth=cfg.bandwidth,
                                                   m=cfg.m, noise_variance=cfg.noise_variance, seed=global_cfg.seed,
                                                   rank_tol=cfg.rank_tol, operators=cfg.operators)


def run_surrogate(global_cfg, cfg, data_store, cache):
    _, signal, partition = _load_inputs(cfg)
    configs = [SurrogateConfig(mode=mode, count=cfg.count, seed=global_cfg.seed, alpha=cfg.alpha,
                               correction=cfg.correction, tail=cfg.tail, chunk_size=cfg.chunk_size,
                               workers=cfg.workers) for mode in cfg.modes]
    return ExperimentAnalytics.get_surrogate_report(data_store, cache, signal, configs, "surrogate",
                                                    partition=partition)


def run_denoise(global_cfg, cfg, data_store, cache):
    _, signal, _ = _load_inputs(cfg)
    mu_grid = np.logspace(np.log10(cfg.mu_min), np.log10(cfg.mu_max), cfg.mu_count)
    return ExperimentAnalytics.get_denoising_report(data_store, cache, signal, "denoise",
                                                    noise_variances=cfg.noise_variances, mu_grid=mu_grid,
                                                    seed=global_cfg.seed, realizations=cfg.realizations,
                                                    regularizers=cfg.regularizers)


def run_ingest_openflights(global_cfg, cfg, data_store, cache):
    table = ContinentTable.load(country_path=cfg.continent_table, timezone_path=cfg.timezone_table)
    opts = FlightsGraphOptions(restrict_to_largest_component=cfg.restrict_to_largest_component,
                               drop_unmappable_continent=cfg.drop_unmappable_continent)
    network = build_flights_graph(cfg.airports, cfg.routes, opts=opts, table=table)
    folder = data_store.create_folder("ingest-openflights")
    files = {
        "edges": write_edge_list(os.path.join(folder, "edges.csv"), network.graph),
        "signal": write_signal(os.path.join(folder, "signal.csv"), network.signal),
        "partition": write_partition(os.path.join(folder, "partition.csv"), network.partition, network.graph),
    }
    return {"report": network.report.to_dict(), "communities": list(network.partition.names), "files": files}


def run_fixture(global_cfg, cfg, data_store, cache):
    folder = data_store.create_folder("fixture")
    result = dict()
    for name in cfg.names:
        fixture = make_fixture(name)
        result[name] = {
            "description": fixture.description,
            "node_count": fixture.graph.n,
            "edge_count": fixture.graph.edge_count,
            "graph_hash": fixture.graph.hash,
            "edges": write_edge_list(os.path.join(folder, "{name}_edges.csv".format(name=name)), fixture.graph),
            "partition": write_partition(os.path.join(folder, "{name}_partition.csv".format(name=name)),
                                         fixture.partition, fixture.graph),
        }
    return result


COMMANDS = {
    "spectrum": run_spectrum,
    "filter": run_filter,
    "sample": run_sample,
    "surrogate": run_surrogate,
    "denoise": run_denoise,
    "ingest-openflights": run_ingest_openflights,
    "fixture": run_fixture,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        global_cfg, command_cfg = resolve_config(args)
        data_store = LocalDataStore(global_cfg.out_dir)
        cache = SpectrumCache(LocalDataStore(global_cfg.cache_dir))
        logger.info("running {command} into {out_dir}".format(command=args.command, out_dir=global_cfg.out_dir))
        result = COMMANDS[args.command](global_cfg, command_cfg, data_store, cache)
        summary = {
            "command": args.command,
            "config": {"global": global_cfg.model_dump(mode="json"),
                       args.command: command_cfg.model_dump(mode="json")},
            "result": result,
        }
        path = data_store.write_json_file(args.command, SUMMARY_FILENAME, summary)
        logger.info("{command} finished, summary written to {path}".format(command=args.command, path=path))
    except CommunityGSPError as e:
        logger.error("{command} failed: {e}".format(command=args.command, e=e))
        return e.exit_code
    except OSError as e:
        logger.error("{command} failed: {e}".format(command=args.command, e=e))
        return EXIT_CODE_DATA
    return EXIT_CODE_SUCCESS


if __name__ == "__main__":
    sys.exit(main())
