from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from config import DEFAULT_RANK_TOL, LOGGING_LEVEL
from community_gsp.src.errors import InvalidParameterError, InvalidPassbandError, SignalGraphMismatchError
from community_gsp.src.graph.graph import GraphSignal, check_signal_on_graph
from community_gsp.src.graph.shift_operator import OperatorKind
from utils.logger.pylogger import get_logger

logger = get_logger("bandlimited", LOGGING_LEVEL)

# column norms closer than this count as tied, so ties go to the lower node index
NORM_TIE_DECIMALS = 12


class BandlimitingOperator(object):
    """B = U Sigma U', the orthogonal projector onto the spectral components in ``band``."""

    def __init__(self, basis, band):
        band = np.unique(np.asarray(band, dtype=int))
        if len(band) == 0:
            raise InvalidPassbandError("a bandlimiting operator needs at least one component")
        if band[0] < 0 or band[-1] >= basis.n:
            raise InvalidPassbandError("band indices must lie in 0..{last}".format(last=basis.n - 1))
        band.setflags(write=False)
        self._basis = basis
        self._band = band
        self._band_vectors = basis.eigenvectors[:, band]

    @classmethod
    def leading(cls, basis, bandwidth):
        """
        The first ``bandwidth`` components in basis order: lowest Laplacian
        frequencies, or the largest modularity eigenvalues.
        """
        if not 1 <= bandwidth <= basis.n:
            raise InvalidParameterError("bandwidth must be in 1..{n}, got {bandwidth}".format(n=basis.n,
                                                                                           bandwidth=bandwidth))
        if basis.operator_kind is OperatorKind.MODULARITY:
            positive = int(np.sum(basis.eigenvalues > basis.strict_tolerance()))
            if bandwidth > positive:
                logger.warning("modularity band of {bandwidth} components includes {extra} non-positive "
                               "eigenvalues".format(bandwidth=bandwidth, extra=bandwidth - positive))
        return cls(basis, np.arange(bandwidth))

    @property
    def basis(self):
        return self._basis

    @property
    def band(self):
        return self._band

    @property
    def bandwidth(self):
        return len(self._band)

    @property
    def n(self):
        return self._basis.n

    @property
    def band_vectors(self):
        return self._band_vectors

    def apply(self, values):
        return self._band_vectors @ (self._band_vectors.T @ values)

    def matrix(self):
        return self._band_vectors @ self._band_vectors.T

    def column_norms(self):
        """l2-norms of the columns of Sigma U', one per node."""
        return np.linalg.norm(self._band_vectors, axis=1)


class SamplingSet(object):
    """Ordered, duplicate-free selection of sampled nodes; R = diag(indicator)."""

    def __init__(self, nodes, n, column_norms=None):
        nodes = np.asarray(nodes, dtype=int).ravel()
        if len(nodes) == 0:
            raise InvalidParameterError("a sampling set needs at least one node")
        if len(np.unique(nodes)) != len(nodes):
            raise InvalidParameterError("sampling set contains duplicate nodes")
        if nodes.min() < 0 or nodes.max() >= n:
            raise InvalidParameterError("sampled node index out of range 0..{last}".format(last=n - 1))
        nodes.setflags(write=False)
        self._nodes = nodes
        self._n = n
        self._column_norms = None if column_norms is None else np.asarray(column_norms, dtype=float)

    @property
    def nodes(self):
        return self._nodes

    @property
    def n(self):
        return self._n

    @property
    def size(self):
        return len(self._nodes)

    @property
    def column_norms(self):
        return self._column_norms

    @property
    def indicator(self):
        indicator = np.zeros(self._n)
        indicator[self._nodes] = 1.0
        return indicator

    def matrix(self):
        return sp.diags(self.indicator)


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    signal: GraphSignal
    effective_rank: int
    bandwidth: int

    @property
    def underdetermined(self):
        return self.effective_rank < self.bandwidth


def select_sampling_set(B, m):
    """
    The m nodes whose columns of Sigma U' have the largest l2-norms, which
    maximizes ||Sigma U' R||_F over all selections of size m.
    """
    if not 1 <= m <= B.n:
        raise InvalidParameterError("sample count must be in 1..{n}, got {m}".format(n=B.n, m=m))
    norms = B.column_norms()
    order = np.lexsort((np.arange(B.n), -np.round(norms, NORM_TIE_DECIMALS)))
    nodes = order[:m]
    return SamplingSet(nodes, B.n, column_norms=norms[nodes])


def sampling_objective(B, R):
    """||Sigma U' R||_F for the selection R."""
    return float(np.linalg.norm(B.band_vectors[R.nodes]))


def sample(R, y):
    """x_s = R y, zero off the sampled nodes."""
    if len(y.values) != R.n:
        raise SignalGraphMismatchError("signal has {length} entries, sampling set is over {n} nodes".format(
            length=len(y.values), n=R.n))
    return y.with_values(y.values * R.indicator)


def reconstruct(B, R, x_s, rank_tol=DEFAULT_RANK_TOL):
    """
    x_rec = V Psi^+ V' x_s with (V, Psi) the eigenpairs of B R B'.

    B R B' is diagonalized in band coordinates (Sigma U' R U Sigma), which has
    the same non-zero eigenpairs; eigenvalues at or below rank_tol * max(Psi)
    are dropped.
    """
    check_signal_on_graph(x_s, B.basis.graph)
    if R.n != B.n:
        raise SignalGraphMismatchError("sampling set and bandlimiting operator have different sizes")
    if np.any(x_s.values[R.indicator == 0] != 0):
        raise InvalidParameterError("sampled signal must be zero outside the sampling set")

    rows = B.band_vectors[R.nodes]
    psi, w = scipy.linalg.eigh(rows.T @ rows)
    keep = psi > rank_tol * psi.max() if psi.max() > 0 else np.zeros(len(psi), dtype=bool)
    v = B.band_vectors @ w[:, keep]
    values = v @ ((v.T @ x_s.values) / psi[keep])
    result = ReconstructionResult(signal=x_s.with_values(values), effective_rank=int(keep.sum()),
                                  bandwidth=B.bandwidth)
    if result.underdetermined:
        logger.warning("underdetermined reconstruction: effective rank {rank} < bandwidth {bandwidth}".format(
            rank=result.effective_rank, bandwidth=result.bandwidth))
    return result
