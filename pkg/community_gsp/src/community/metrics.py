from dataclasses import dataclass

import numpy as np
import pandas as pd
import scipy.sparse as sp

from community_gsp.src.errors import ConfigurationError
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator, as_sign_vector
from community_gsp.src.spectral.spectral_basis import require_basis_kind


@dataclass(frozen=True, eq=False)
class NodeRoleScores:
    """Within- and outside-community degree z-scores; NaN where a community has zero degree spread."""
    z_in: np.ndarray
    z_out: np.ndarray
    k_in: np.ndarray
    k_out: np.ndarray

    @property
    def z_in_defined(self):
        return np.isfinite(self.z_in)

    @property
    def z_out_defined(self):
        return np.isfinite(self.z_out)

    def to_frame(self, graph, partition):
        return pd.DataFrame({
            "node_id": list(graph.node_ids),
            "community": [partition.name_of(i) for i in range(graph.n)],
            "k_in": self.k_in,
            "k_out": self.k_out,
            "z_in": self.z_in,
            "z_out": self.z_out,
        })


def cut_size(g, s):
    """R = (1/4) s'Ls, the total weight of edges crossing the split."""
    values = as_sign_vector(g, s)
    laplacian = ShiftOperator(OperatorKind.LAPLACIAN, g)
    return float(values @ laplacian.matvec(values)) / 4.0


def spectral_bipartition(basis):
    """
    Signs of the leading modularity eigenvector, or of the Fiedler vector for a
    Laplacian basis. Zero entries go to +1.
    """
    require_basis_kind(basis, OperatorKind.MODULARITY, OperatorKind.LAPLACIAN)
    if basis.operator_kind is OperatorKind.MODULARITY:
        column = 0
    else:
        non_zero = np.flatnonzero(basis.eigenvalues > basis.strict_tolerance())
        if len(non_zero) == 0:
            raise ConfigurationError("the Laplacian has no non-zero eigenvalue, there is no Fiedler vector")
        column = int(non_zero[0])
    leading = basis.eigenvectors[:, column]
    return np.where(leading < 0, -1.0, 1.0)


def _standardize_within(values, labels):
    grouped = pd.Series(values).groupby(labels)
    mean = grouped.transform("mean").to_numpy()
    std = grouped.transform(lambda v: v.std(ddof=0)).to_numpy()
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(std > 0, (values - mean) / np.where(std > 0, std, 1.0), np.nan)


def z_scores(g, p):
    """
    Z_in: within-community degree of each node z-scored inside its community.
    Z_out: degree towards the other communities, z-scored inside the node's community.
    """
    p.check_covers(g)
    labels = p.labels
    membership = sp.csr_matrix((np.ones(g.n), (np.arange(g.n), labels)), shape=(g.n, p.community_count))
    degree_per_community = (g.adjacency @ membership).toarray()
    k_in = degree_per_community[np.arange(g.n), labels]
    k_out = g.degrees - k_in
    return NodeRoleScores(z_in=_standardize_within(k_in, labels), z_out=_standardize_within(k_out, labels),
                          k_in=k_in, k_out=k_out)
