from enum import Enum

import numpy as np
from scipy.sparse.linalg import LinearOperator

from community_gsp.src.errors import ConfigurationError, DataError, InvalidPartitionError
from community_gsp.src.graph.graph import GraphSignal, check_signal_on_graph


class OperatorKind(Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    MODULARITY = "modularity"
    MODULARITY_PLUS = "modularity_plus"
    MODULARITY_MINUS = "modularity_minus"

    @property
    def is_shifted(self):
        return self in (OperatorKind.MODULARITY_PLUS, OperatorKind.MODULARITY_MINUS)

    @property
    def is_modularity_family(self):
        return self in (OperatorKind.MODULARITY, OperatorKind.MODULARITY_PLUS, OperatorKind.MODULARITY_MINUS)


class ShiftOperator(object):
    """
    Matrix-free symmetric shift operator on a graph.

    Q x = A x - (k'x / 2M) k, L x = D x - A x, Q+ x = lmax x - Q x and
    Q- x = Q x - lmin x. Only the sparse adjacency and the degree vector are
    touched, so one application costs O(M' + N).
    """

    def __init__(self, kind, graph, shift_constant=None):
        kind = OperatorKind(kind)
        if shift_constant is not None and not kind.is_shifted:
            raise ConfigurationError("shift constant only applies to modularity_plus/modularity_minus")
        self._kind = kind
        self._graph = graph
        self._shift_constant = None if shift_constant is None else float(shift_constant)

    @property
    def kind(self):
        return self._kind

    @property
    def graph(self):
        return self._graph

    @property
    def shift_constant(self):
        return self._shift_constant

    @property
    def n(self):
        return self._graph.n

    def _modularity(self, values):
        graph = self._graph
        k = graph.degrees
        ax = graph.adjacency @ values
        if values.ndim == 1:
            return ax - (k @ values / (2.0 * graph.total_weight)) * k
        return ax - np.outer(k, k @ values) / (2.0 * graph.total_weight)

    def _require_shift_constant(self):
        if self._shift_constant is None:
            raise ConfigurationError("{kind} operator has no shift constant; build it with "
                                     "build_shift_operator".format(kind=self._kind.value))
        return self._shift_constant

    def matvec(self, values):
        """Apply the operator to a vector (n,) or to the columns of a matrix (n, m)."""
        values = np.asarray(values, dtype=float)
        if values.shape[0] != self.n:
            raise DataError("operand has {rows} rows but operator has dimension {n}".format(
                rows=values.shape[0], n=self.n))
        graph = self._graph
        if self._kind is OperatorKind.ADJACENCY:
            return graph.adjacency @ values
        if self._kind is OperatorKind.LAPLACIAN:
            degrees = graph.degrees if values.ndim == 1 else graph.degrees[:, None]
            return degrees * values - graph.adjacency @ values
        if self._kind is OperatorKind.MODULARITY:
            return self._modularity(values)
        if self._kind is OperatorKind.MODULARITY_PLUS:
            return self._require_shift_constant() * values - self._modularity(values)
        return self._modularity(values) - self._require_shift_constant() * values

    def as_linear_operator(self):
        return LinearOperator(shape=(self.n, self.n), matvec=self.matvec, rmatvec=self.matvec,
                              matmat=self.matvec, dtype=float)

    def to_dense(self):
        """Materialize the n x n matrix. Only meant for eigendecomposition and test oracles."""
        graph = self._graph
        adjacency = graph.to_dense_adjacency()
        if self._kind is OperatorKind.ADJACENCY:
            return adjacency
        if self._kind is OperatorKind.LAPLACIAN:
            return np.diag(graph.degrees) - adjacency
        k = graph.degrees
        modularity = adjacency - np.outer(k, k) / (2.0 * graph.total_weight)
        if self._kind is OperatorKind.MODULARITY:
            return modularity
        if self._kind is OperatorKind.MODULARITY_PLUS:
            return self._require_shift_constant() * np.eye(self.n) - modularity
        return modularity - self._require_shift_constant() * np.eye(self.n)

    def __repr__(self):
        return "ShiftOperator(kind={kind}, n={n}, shift_constant={c})".format(kind=self._kind.value, n=self.n,
                                                                              c=self._shift_constant)


def apply_shift(op, x):
    check_signal_on_graph(x, op.graph)
    return GraphSignal(op.matvec(x.values), op.graph)


def quadratic_form(op, x):
    check_signal_on_graph(x, op.graph)
    return float(x.values @ op.matvec(x.values))


def as_sign_vector(graph, s):
    values = s.values if isinstance(s, GraphSignal) else np.asarray(s, dtype=float).ravel()
    if len(values) != graph.n:
        raise InvalidPartitionError("sign vector has {length} entries but graph has {n} nodes".format(
            length=len(values), n=graph.n))
    if not np.all(np.abs(values) == 1.0):
        raise InvalidPartitionError("sign vector entries must be +1 or -1")
    return values


def modularity_index(g, s):
    """(1/4) s'Qs for a two-way split encoded by the sign vector s."""
    values = as_sign_vector(g, s)
    op = ShiftOperator(OperatorKind.MODULARITY, g)
    return float(values @ op.matvec(values)) / 4.0


def null_model_edge(g, i, j):
    """Expected weight k_i k_j / 2M between nodes i and j under the configuration model."""
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise DataError("node index out of range for a graph with {n} nodes".format(n=g.n))
    return float(g.degrees[i] * g.degrees[j] / (2.0 * g.total_weight))


def null_model_row_sums(g):
    k = g.degrees
    return k * k.sum() / (2.0 * g.total_weight)
