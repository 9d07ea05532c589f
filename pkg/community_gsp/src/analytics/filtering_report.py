import pandas as pd

from config import LOGGING_LEVEL
from community_gsp.src.community.metrics import z_scores
from community_gsp.src.filters.community_variability import within_community_variability
from community_gsp.src.filters.polynomial_filter import PolynomialFilter, apply_polynomial
from community_gsp.src.filters.spectral_window import BASIS_KIND_FOR_PASSBAND, PassbandKind, apply_window, \
    window_for_filter
from community_gsp.src.graph.shift_operator import OperatorKind
from community_gsp.src.spectral.spectral_basis import build_shift_operator, signal_profile
from utils.logger.pylogger import get_logger

logger = get_logger("filtering_report", LOGGING_LEVEL)

POLYNOMIAL_COLUMN = "polynomial"


def get_filtered_signal(cache, signal, filter_spec, band_operator=OperatorKind.MODULARITY):
    """(passband, filtered signal) for a named filter or an explicit band on ``band_operator``."""
    graph = signal.graph
    if filter_spec.kind is PassbandKind.EXPLICIT_RANGE:
        basis = cache.get_basis(graph, band_operator)
        reference = None
    else:
        basis = cache.get_basis(graph, BASIS_KIND_FOR_PASSBAND[filter_spec.kind])
        reference = cache.get_basis(graph, OperatorKind.MODULARITY)
    pb, window = window_for_filter(filter_spec, basis, reference=reference)
    return pb, apply_window(basis, window, signal)


def get_nodes_of_interest(signal, outputs, nodes_of_interest, roles=None):
    graph = signal.graph
    summary = dict()
    for node_id in nodes_of_interest:
        if not graph.has_node(node_id):
            logger.warning("node of interest {node_id} is not in the graph".format(node_id=node_id))
            continue
        i = graph.index_of(node_id)
        entry = {"value": float(signal.values[i])}
        entry.update({name: float(output.values[i]) for name, output in outputs.items()})
        if roles is not None:
            entry["z_in"] = float(roles.z_in[i])
            entry["z_out"] = float(roles.z_out[i])
        summary[node_id] = entry
    return summary


def get_filtering_report(data_store, cache, signal, filter_specs, folder, partition=None, nodes_of_interest=(),
                         band_operator=OperatorKind.MODULARITY, polynomial_coefficients=None,
                         polynomial_operator=OperatorKind.MODULARITY):
    graph = signal.graph
    modularity_basis = cache.get_basis(graph, OperatorKind.MODULARITY)
    outputs = dict()
    filters = dict()
    for filter_spec in filter_specs:
        pb, output = get_filtered_signal(cache, signal, filter_spec, band_operator=band_operator)
        outputs[filter_spec.text] = output
        filters[filter_spec.text] = {"first": pb.first, "last": pb.last, "band_size": pb.size,
                                     "profile": signal_profile(output, modularity_basis)}

    if polynomial_coefficients is not None:
        op = build_shift_operator(graph, polynomial_operator, modularity_basis=modularity_basis)
        output = apply_polynomial(PolynomialFilter(coefficients=tuple(polynomial_coefficients), operator=op), signal)
        outputs[POLYNOMIAL_COLUMN] = output
        filters[POLYNOMIAL_COLUMN] = {"operator": op.kind.value, "coefficients": list(polynomial_coefficients),
                                      "profile": signal_profile(output, modularity_basis)}

    frame = pd.DataFrame({"node_id": list(graph.node_ids), "value": signal.values})
    for name, output in outputs.items():
        frame[name] = output.values
    data_store.write_dataframe(folder, "filtered_signals.csv", frame)

    result = {"input_profile": signal_profile(signal, modularity_basis), "filters": filters}
    roles = None
    if partition is not None:
        partition.check_covers(graph)
        result["input_delta_c"] = within_community_variability(signal, partition)
        for name, output in outputs.items():
            filters[name]["delta_c"] = within_community_variability(output, partition)
        roles = z_scores(graph, partition)
        data_store.write_dataframe(folder, "node_roles.csv", roles.to_frame(graph, partition))
    result["nodes_of_interest"] = get_nodes_of_interest(signal, outputs, nodes_of_interest, roles=roles)
    logger.info("filtering report: {count} filters on {n} nodes".format(count=len(outputs), n=graph.n))
    return result
