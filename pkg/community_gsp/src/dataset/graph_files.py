"""
Plain-text artifacts keyed by external node id.

Edge lists hold ``src,dst[,weight]`` rows, signals ``node_id,value`` rows and
partitions ``node_id,community`` rows, written as quoted CSV so node ids may
contain commas or quotes. A row whose first field starts with ``#`` is a
comment. Readers order nodes by their natural id order (numerically when every
id is an integer), which is also the order every writer emits, so files
round-trip.
"""
import os
import warnings

import numpy as np
import pandas as pd

from config import LOGGING_LEVEL
from community_gsp.src.community.partition import Partition
from community_gsp.src.errors import DataError, MalformedFileError
from community_gsp.src.graph.graph import Graph, GraphSignal
from utils.logger.pylogger import get_logger

logger = get_logger("graph_files", LOGGING_LEVEL)


def natural_order(node_ids):
    node_ids = list(node_ids)
    try:
        return sorted(node_ids, key=int)
    except ValueError:
        return sorted(node_ids)


def _format_real(value):
    return "{value:.17g}".format(value=float(value))


def _read_rows(path, width):
    """
    Every physical line of the file as ``width`` string fields, padded with "".

    Blank lines are kept so that row positions stay line numbers (exact unless a
    quoted field spans lines). Fields past ``width`` are dropped.
    """
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", pd.errors.ParserWarning)
            df = pd.read_csv(path, header=None, names=list(range(width)), index_col=False, dtype=str,
                             na_filter=False, skip_blank_lines=False, engine="python", quotechar='"')
    except pd.errors.EmptyDataError:
        return pd.DataFrame(columns=list(range(width)))
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError("cannot parse {path}: {e}".format(path=path, e=e))
    return df.fillna("")


def _records(path, min_fields, max_fields):
    """(line_number, fields) of every non-blank, non-comment row."""
    df = _read_rows(path, max_fields + 1)
    for position, row in enumerate(df.itertuples(index=False, name=None)):
        fields = [str(field).strip() for field in row]
        while fields and not fields[-1]:
            fields.pop()
        if not fields or fields[0].startswith("#"):
            continue
        if not min_fields <= len(fields) <= max_fields or not all(fields):
            raise MalformedFileError(path, position + 1, "expected {low}..{high} non-empty fields, got {fields}"
                                     .format(low=min_fields, high=max_fields, fields=fields))
        yield position + 1, fields


def _parse_real(path, line_number, text):
    try:
        value = float(text)
    except ValueError:
        raise MalformedFileError(path, line_number, "'{text}' is not a number".format(text=text))
    if not np.isfinite(value):
        raise MalformedFileError(path, line_number, "'{text}' is not finite".format(text=text))
    return value


def _write_frame(path, header, df):
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fp:
        fp.write("# {header}\n".format(header=header))
        df.to_csv(fp, header=False, index=False, lineterminator="\n")
    return path


def read_edge_list(path):
    edges = list()
    for line_number, fields in _records(path, 2, 3):
        src, dst = fields[0], fields[1]
        if src == dst:
            raise MalformedFileError(path, line_number, "self-loop at node {src}".format(src=src))
        weight = _parse_real(path, line_number, fields[2]) if len(fields) == 3 else 1.0
        if weight <= 0:
            raise MalformedFileError(path, line_number, "weight must be positive, got {weight}".format(
                weight=weight))
        edges.append((src, dst, weight))
    if not edges:
        raise DataError("edge list {path} holds no edges".format(path=path))
    node_ids = natural_order(set(label for edge in edges for label in edge[:2]))
    graph = Graph.from_edges(edges, node_ids=node_ids)
    logger.info("read {path}: {n} nodes, {m} edges".format(path=path, n=graph.n, m=graph.edge_count))
    return graph


def write_edge_list(path, graph):
    ids = graph.node_ids
    df = pd.DataFrame([(str(ids[i]), str(ids[j]), _format_real(w)) for i, j, w in graph.edges],
                      columns=["src", "dst", "weight"])
    return _write_frame(path, "src,dst,weight", df)


def read_signal(path, graph):
    values = np.full(graph.n, np.nan)
    for line_number, fields in _records(path, 2, 2):
        node_id = fields[0]
        if not graph.has_node(node_id):
            raise MalformedFileError(path, line_number, "unknown node {node_id}".format(node_id=node_id))
        i = graph.index_of(node_id)
        if not np.isnan(values[i]):
            raise MalformedFileError(path, line_number, "duplicate node {node_id}".format(node_id=node_id))
        values[i] = _parse_real(path, line_number, fields[1])
    missing = np.flatnonzero(np.isnan(values))
    if len(missing) == graph.n:
        raise DataError("signal file {path} holds no values".format(path=path))
    if len(missing):
        raise DataError("signal file {path} misses {count} nodes, e.g. {node_id}".format(
            path=path, count=len(missing), node_id=graph.node_ids[missing[0]]))
    return GraphSignal(values, graph)


def write_signal(path, signal):
    ids = signal.graph.node_ids
    df = pd.DataFrame({"node_id": [str(node_id) for node_id in ids],
                       "value": [_format_real(v) for v in signal.values]})
    return _write_frame(path, "node_id,value", df)


def read_partition(path, graph, order=None):
    assignments = dict()
    for line_number, fields in _records(path, 2, 2):
        node_id, community = fields
        if not graph.has_node(node_id):
            raise MalformedFileError(path, line_number, "unknown node {node_id}".format(node_id=node_id))
        if node_id in assignments:
            raise MalformedFileError(path, line_number, "duplicate node {node_id}".format(node_id=node_id))
        assignments[node_id] = community
    if not assignments:
        raise DataError("partition file {path} holds no assignments".format(path=path))
    if order is None:
        order = natural_order(set(assignments.values()))
    return Partition.from_assignments(graph, assignments, order=order)


def write_partition(path, partition, graph):
    partition.check_covers(graph)
    ids = graph.node_ids
    df = pd.DataFrame({"node_id": [str(node_id) for node_id in ids],
                       "community": [partition.name_of(i) for i in range(graph.n)]})
    return _write_frame(path, "node_id,community", df)
