import numpy as np
import pandas as pd

from config import LOGGING_LEVEL
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator, null_model_row_sums
from community_gsp.src.spectral.spectral_basis import signal_profile, strictly_negative_indices, \
    strictly_positive_indices, weyl_interlacing_holds
from community_gsp.src.spectral.spectrum_io import spectrum_frame
from utils.logger.pylogger import get_logger

logger = get_logger("spectrum_report", LOGGING_LEVEL)


def get_spectrum_counts(basis):
    positive = len(strictly_positive_indices(basis))
    negative = len(strictly_negative_indices(basis))
    return {
        "positive": positive,
        "negative": negative,
        "zero": basis.n - positive - negative,
        "min": float(basis.eigenvalues.min()),
        "max": float(basis.eigenvalues.max()),
    }


def get_cross_quadratic_forms(laplacian_basis, modularity_basis):
    """q_L of every modularity eigenvector and q_Q of every Laplacian eigenvector, per eigen-index."""
    graph = laplacian_basis.graph
    u_q = modularity_basis.eigenvectors
    u_l = laplacian_basis.eigenvectors
    q_l_of_u_q = np.sum(u_q * ShiftOperator(OperatorKind.LAPLACIAN, graph).matvec(u_q), axis=0)
    q_q_of_u_l = np.sum(u_l * ShiftOperator(OperatorKind.MODULARITY, graph).matvec(u_l), axis=0)
    return pd.DataFrame({
        "index": np.arange(1, graph.n + 1),
        "laplacian_eigenvalue": laplacian_basis.eigenvalues,
        "modularity_eigenvalue": modularity_basis.eigenvalues,
        "laplacian_form_of_modularity_eigenvector": q_l_of_u_q,
        "modularity_form_of_laplacian_eigenvector": q_q_of_u_l,
    })


def get_null_model_frame(graph):
    return pd.DataFrame({
        "node_id": list(graph.node_ids),
        "degree": graph.degrees,
        "null_model_row_sum": null_model_row_sums(graph),
    })


def get_spectrum_report(data_store, cache, graph, folder, signal=None):
    laplacian_basis = cache.get_basis(graph, OperatorKind.LAPLACIAN)
    modularity_basis = cache.get_basis(graph, OperatorKind.MODULARITY)
    adjacency_basis = cache.get_basis(graph, OperatorKind.ADJACENCY)

    data_store.write_dataframe(folder, "laplacian_eigenvalues.csv", spectrum_frame(laplacian_basis))
    data_store.write_dataframe(folder, "modularity_eigenvalues.csv", spectrum_frame(modularity_basis))
    data_store.write_dataframe(folder, "cross_quadratic_forms.csv",
                               get_cross_quadratic_forms(laplacian_basis, modularity_basis))
    null_model = get_null_model_frame(graph)
    data_store.write_dataframe(folder, "null_model.csv", null_model)

    result = {
        "node_count": graph.n,
        "edge_count": graph.edge_count,
        "component_count": graph.component_count(),
        "graph_hash": graph.hash,
        "laplacian": get_spectrum_counts(laplacian_basis),
        "modularity": get_spectrum_counts(modularity_basis),
        "interlacing_holds": weyl_interlacing_holds(adjacency_basis, modularity_basis),
        "null_model_max_degree_deviation": float(np.max(np.abs(null_model["null_model_row_sum"] -
                                                               null_model["degree"]))),
    }
    if signal is not None:
        result["signal_profile"] = signal_profile(signal, modularity_basis)
    logger.info("spectrum report: {positive} modular and {negative} anti-modular components".format(
        positive=result["modularity"]["positive"], negative=result["modularity"]["negative"]))
    return result
