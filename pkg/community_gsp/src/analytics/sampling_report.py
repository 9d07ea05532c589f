import numpy as np
import pandas as pd
from statsmodels.stats.weightstats import DescrStatsW

from config import LOGGING_LEVEL
from community_gsp.src.graph.shift_operator import OperatorKind
from community_gsp.src.sampling.bandlimited import BandlimitingOperator, reconstruct, sample, select_sampling_set
from utils.logger.pylogger import get_logger

logger = get_logger("sampling_report", LOGGING_LEVEL)

SAMPLING_OPERATORS = (OperatorKind.LAPLACIAN, OperatorKind.MODULARITY)


def get_noisy_signal(signal, noise_variance, seed):
    """y = x + n with n i.i.d. zero-mean Gaussian of the given variance."""
    rng = np.random.default_rng(seed)
    return signal.with_values(signal.values + rng.normal(0.0, np.sqrt(noise_variance), size=len(signal.values)))


def paired_t_test(first, second):
    """Two-sided paired t-test of first - second against zero; p = 1 when the differences are all zero."""
    differences = np.asarray(first) - np.asarray(second)
    if np.all(differences == 0):
        return 0.0, 1.0
    t_statistic, p_value, _ = DescrStatsW(differences).ttest_mean(0.0, alternative="two-sided")
    return float(t_statistic), float(p_value)


def get_sampling_run(cache, signal, noisy, operator, bandwidth, m, rank_tol):
    graph = signal.graph
    basis = cache.get_basis(graph, operator)
    B = BandlimitingOperator.leading(basis, bandwidth)
    R = select_sampling_set(B, m)
    result = reconstruct(B, R, sample(R, noisy), rank_tol=rank_tol)
    squared_error = (result.signal.values - signal.values) ** 2
    selected_degrees = graph.degrees[R.nodes]
    sampling_set = pd.DataFrame({
        "rank": np.arange(1, R.size + 1),
        "node_id": [graph.node_ids[i] for i in R.nodes],
        "column_norm": R.column_norms,
    })
    reconstruction = pd.DataFrame({
        "node_id": list(graph.node_ids),
        "truth": signal.values,
        "noisy": noisy.values,
        "reconstructed": result.signal.values,
        "squared_error": squared_error,
    })
    summary = {
        "operator": OperatorKind(operator).value,
        "bandwidth": B.bandwidth,
        "m": R.size,
        "effective_rank": result.effective_rank,
        "underdetermined": result.underdetermined,
        "selected_degree_mean": float(selected_degrees.mean()),
        "selected_degree_std": float(selected_degrees.std()),
        "mse_per_node": squared_error.tolist(),
        "mse_mean": float(squared_error.mean()),
        "mse_std": float(squared_error.std()),
    }
    return R, summary, sampling_set, reconstruction


def get_sampling_report(data_store, cache, signal, folder, bandwidth, m, noise_variance, seed, rank_tol,
                        operators=SAMPLING_OPERATORS):
    noisy = get_noisy_signal(signal, noise_variance, seed)
    runs = dict()
    selections = dict()
    for operator in operators:
        operator = OperatorKind(operator)
        R, summary, sampling_set, reconstruction = get_sampling_run(cache, signal, noisy, operator, bandwidth, m,
                                                                    rank_tol)
        data_store.write_dataframe(folder, "sampling_set_{operator}.csv".format(operator=operator.value),
                                   sampling_set)
        data_store.write_dataframe(folder, "reconstruction_{operator}.csv".format(operator=operator.value),
                                   reconstruction)
        summary["noise_variance"] = noise_variance
        summary["seed"] = seed
        summary["p_value"] = None
        runs[operator.value] = summary
        selections[operator.value] = set(R.nodes.tolist())

    result = {"runs": runs}
    laplacian, modularity = OperatorKind.LAPLACIAN.value, OperatorKind.MODULARITY.value
    if laplacian in runs and modularity in runs:
        t_statistic, p_value = paired_t_test(runs[laplacian]["mse_per_node"], runs[modularity]["mse_per_node"])
        for summary in runs.values():
            summary["p_value"] = p_value
        result["comparison"] = {
            "t_statistic": t_statistic,
            "p_value": p_value,
            "overlap": len(selections[laplacian] & selections[modularity]),
            "lower_error": modularity if runs[modularity]["mse_mean"] < runs[laplacian]["mse_mean"] else laplacian,
        }
        logger.info("sampling comparison: mse {l_mse:.4g} (laplacian) vs {q_mse:.4g} (modularity), p = {p:.3g}"
                    .format(l_mse=runs[laplacian]["mse_mean"], q_mse=runs[modularity]["mse_mean"], p=p_value))
    return result
