import hashlib

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from community_gsp.src.errors import DataError, SignalGraphMismatchError


class Graph(object):
    """
    Undirected weighted graph without self-loops.

    Nodes carry external labels (``node_ids``) and are stored under the dense
    indices 0..n-1. The adjacency is a symmetric CSR matrix; degrees and the
    total edge weight M = sum(k) / 2 are cached at construction.
    """

    def __init__(self, adjacency, node_ids):
        adjacency = sp.csr_matrix(adjacency, dtype=float)
        n = adjacency.shape[0]
        if adjacency.shape != (n, n):
            raise DataError("adjacency must be square, got shape {shape}".format(shape=adjacency.shape))
        if len(node_ids) != n:
            raise DataError("expected {n} node ids, got {count}".format(n=n, count=len(node_ids)))
        if len(set(node_ids)) != n:
            raise DataError("node ids must be unique")
        if adjacency.diagonal().any():
            raise DataError("self-loops are not allowed")
        if adjacency.nnz > 0 and (not np.all(np.isfinite(adjacency.data)) or adjacency.data.min() <= 0):
            raise DataError("edge weights must be finite and strictly positive")
        if abs(adjacency - adjacency.T).sum() > 0:
            raise DataError("adjacency must be symmetric")

        degrees = np.asarray(adjacency.sum(axis=1)).ravel()
        total_weight = degrees.sum() / 2.0
        if not total_weight > 0:
            raise DataError("total edge weight must be positive, the graph has no edges")

        adjacency.sort_indices()
        degrees.setflags(write=False)
        self._adjacency = adjacency
        self._node_ids = tuple(node_ids)
        self._index = {node_id: i for i, node_id in enumerate(self._node_ids)}
        self._degrees = degrees
        self._total_weight = float(total_weight)
        self._hash = None

    @classmethod
    def from_edges(cls, edges, node_ids=None):
        """
        Build a graph from ``(src, dst[, weight])`` tuples of external labels.

        Duplicate edges are summed into one weight. Without ``node_ids`` the node
        order is the order of first appearance in ``edges``.
        """
        if node_ids is None:
            index = dict()
            for edge in edges:
                for label in edge[:2]:
                    if label not in index:
                        index[label] = len(index)
            node_ids = list(index.keys())
        else:
            node_ids = list(node_ids)
            index = {node_id: i for i, node_id in enumerate(node_ids)}

        rows, cols, weights = list(), list(), list()
        for edge in edges:
            src, dst = edge[0], edge[1]
            weight = float(edge[2]) if len(edge) > 2 else 1.0
            if src not in index or dst not in index:
                raise DataError("edge ({src}, {dst}) references an unknown node".format(src=src, dst=dst))
            i, j = index[src], index[dst]
            if i == j:
                raise DataError("self-loop at node {src} is not allowed".format(src=src))
            if not np.isfinite(weight) or weight <= 0:
                raise DataError("edge ({src}, {dst}) has non-positive weight {weight}".format(
                    src=src, dst=dst, weight=weight))
            rows.append(min(i, j))
            cols.append(max(i, j))
            weights.append(weight)

        n = len(node_ids)
        upper = sp.coo_matrix((weights, (rows, cols)), shape=(n, n)).tocsr()
        upper.sum_duplicates()
        return cls(adjacency=upper + upper.T, node_ids=node_ids)

    @property
    def n(self):
        return self._adjacency.shape[0]

    @property
    def node_ids(self):
        return self._node_ids

    @property
    def adjacency(self):
        return self._adjacency

    @property
    def degrees(self):
        return self._degrees

    @property
    def total_weight(self):
        return self._total_weight

    @property
    def edge_count(self):
        return self._adjacency.nnz // 2

    @property
    def edges(self):
        upper = sp.triu(self._adjacency, k=1).tocoo()
        order = np.lexsort((upper.col, upper.row))
        return [(int(upper.row[e]), int(upper.col[e]), float(upper.data[e])) for e in order]

    @property
    def hash(self):
        if self._hash is None:
            upper = sp.triu(self._adjacency, k=1).tocsr()
            upper.sort_indices()
            digest = hashlib.sha256()
            digest.update("\x1f".join(str(node_id) for node_id in self._node_ids).encode("utf-8"))
            digest.update(upper.indptr.astype(np.int64).tobytes())
            digest.update(upper.indices.astype(np.int64).tobytes())
            digest.update(upper.data.astype(np.float64).tobytes())
            self._hash = digest.hexdigest()
        return self._hash

    def index_of(self, node_id):
        try:
            return self._index[node_id]
        except KeyError:
            raise DataError("unknown node id {node_id}".format(node_id=node_id))

    def has_node(self, node_id):
        return node_id in self._index

    def component_labels(self):
        _, labels = connected_components(self._adjacency, directed=False)
        return labels

    def component_count(self):
        count, _ = connected_components(self._adjacency, directed=False)
        return int(count)

    def subgraph(self, indices):
        indices = np.sort(np.asarray(indices, dtype=int))
        adjacency = self._adjacency[indices][:, indices]
        return Graph(adjacency=adjacency, node_ids=[self._node_ids[i] for i in indices])

    def largest_component(self):
        labels = self.component_labels()
        sizes = np.bincount(labels)
        keep = np.flatnonzero(labels == np.argmax(sizes))
        if len(keep) == self.n:
            return self
        return self.subgraph(keep)

    def binarized(self):
        adjacency = self._adjacency.copy()
        adjacency.data[:] = 1.0
        return Graph(adjacency=adjacency, node_ids=self._node_ids)

    def to_dense_adjacency(self):
        return self._adjacency.toarray()

    def __repr__(self):
        return "Graph(n={n}, edges={edges}, total_weight={m})".format(n=self.n, edges=self.edge_count,
                                                                      m=self._total_weight)


class GraphSignal(object):
    """Real-valued, finite vector indexed by the nodes of a graph."""

    def __init__(self, values, graph):
        values = np.array(values, dtype=float).ravel()
        if len(values) != graph.n:
            raise SignalGraphMismatchError("signal has {length} entries but graph has {n} nodes".format(
                length=len(values), n=graph.n))
        if not np.all(np.isfinite(values)):
            raise DataError("signal entries must be finite")
        values.setflags(write=False)
        self._values = values
        self._graph = graph

    @classmethod
    def zeros(cls, graph):
        return cls(np.zeros(graph.n), graph)

    @property
    def values(self):
        return self._values

    @property
    def graph(self):
        return self._graph

    def with_values(self, values):
        return GraphSignal(values, self._graph)

    def value_at(self, node_id):
        return float(self._values[self._graph.index_of(node_id)])

    def norm(self):
        return float(np.linalg.norm(self._values))

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        return "GraphSignal(n={n}, norm={norm:.6g})".format(n=len(self._values), norm=self.norm())


def check_signal_on_graph(signal, graph):
    if signal.graph is graph:
        return
    if signal.graph.n != graph.n or signal.graph.hash != graph.hash:
        raise SignalGraphMismatchError("signal is not defined on this graph")
