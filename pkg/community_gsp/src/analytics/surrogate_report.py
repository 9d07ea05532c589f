import numpy as np

from config import LOGGING_LEVEL
from community_gsp.src.community.metrics import z_scores
from community_gsp.src.surrogate.surrogates import surrogate_test
from utils.logger.pylogger import get_logger

logger = get_logger("surrogate_report", LOGGING_LEVEL)


def _mean_std(values):
    values = values[np.isfinite(values)]
    if len(values) == 0:
        return None, None
    return float(values.mean()), float(values.std())


def get_significant_roles(graph, partition, significant):
    roles = z_scores(graph, partition)
    nodes = np.flatnonzero(significant)
    z_in_mean, z_in_std = _mean_std(roles.z_in[nodes])
    z_out_mean, z_out_std = _mean_std(roles.z_out[nodes])
    return {
        "nodes": {graph.node_ids[i]: {"z_in": float(roles.z_in[i]), "z_out": float(roles.z_out[i])} for i in nodes},
        "z_in_mean": z_in_mean,
        "z_in_std": z_in_std,
        "z_out_mean": z_out_mean,
        "z_out_std": z_out_std,
    }


def get_surrogate_report(data_store, cache, signal, configs, folder, partition=None):
    graph = signal.graph
    result = dict()
    for cfg in configs:
        basis = cache.get_basis(graph, cfg.mode.basis_kind)
        test = surrogate_test(basis, signal, cfg)
        data_store.write_dataframe(folder, "surrogate_{mode}.csv".format(mode=cfg.mode.value), test.to_frame(signal))
        summary = {
            "mode": cfg.mode.value,
            "count": test.realizations_used,
            "seed": cfg.seed,
            "alpha": cfg.alpha,
            "correction": cfg.correction.value,
            "tail": cfg.tail.value,
            "threshold": test.threshold,
            "significant_count": test.significant_count,
            "significant_nodes": [graph.node_ids[i] for i in np.flatnonzero(test.significant)],
        }
        if partition is not None:
            summary["significant_roles"] = get_significant_roles(graph, partition, test.significant)
        result[cfg.mode.value] = summary
    return result
