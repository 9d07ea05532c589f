from dataclasses import dataclass

import numpy as np
import scipy.linalg

from config import EIGEN_RESIDUAL_TOL, LOGGING_LEVEL, STRICT_BAND_RELATIVE_TOL
from community_gsp.src.errors import ConfigurationError, NumericalFailureError, SignalGraphMismatchError
from community_gsp.src.graph.graph import Graph, GraphSignal, check_signal_on_graph
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator
from utils.logger.pylogger import get_logger

logger = get_logger("spectral", LOGGING_LEVEL)

ASCENDING = "ascending"
DESCENDING = "descending"

_DESCENDING_KINDS = (OperatorKind.MODULARITY, OperatorKind.ADJACENCY)


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """
    Eigenvectors (columns of ``eigenvectors``) and eigenvalues of a shift operator.

    Laplacian, Q+ and Q- bases are stored in ascending eigenvalue order,
    modularity and adjacency bases in descending order.
    """
    eigenvectors: np.ndarray
    eigenvalues: np.ndarray
    operator_kind: OperatorKind
    ordering: str
    graph: Graph

    @property
    def n(self):
        return len(self.eigenvalues)

    def eigenvector(self, i):
        return GraphSignal(self.eigenvectors[:, i], self.graph)

    def strict_tolerance(self):
        return strict_band_tolerance(self.eigenvalues)


@dataclass(frozen=True, eq=False)
class SpectralCoefficients:
    values: np.ndarray
    basis: SpectralBasis

    def norm(self):
        return float(np.linalg.norm(self.values))


def strict_band_tolerance(eigenvalues):
    eigenvalues = np.asarray(eigenvalues)
    if len(eigenvalues) == 0:
        return 0.0
    return STRICT_BAND_RELATIVE_TOL * float(np.max(np.abs(eigenvalues)))


def _canonical_signs(eigenvectors):
    # largest-magnitude entry of each column made positive, ties to the lowest index
    magnitudes = np.abs(eigenvectors)
    near_max = magnitudes >= magnitudes.max(axis=0) - 1e-12
    pivots = np.argmax(near_max, axis=0)
    signs = np.sign(eigenvectors[pivots, np.arange(eigenvectors.shape[1])])
    signs[signs == 0] = 1.0
    return eigenvectors * signs


def _frozen(array):
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


def derive_shifted_basis(modularity_basis, kind, shift_constant=None):
    """Q+ / Q- basis from a modularity basis: same eigenvectors, shifted eigenvalues sorted ascending."""
    kind = OperatorKind(kind)
    if modularity_basis.operator_kind is not OperatorKind.MODULARITY:
        raise ConfigurationError("a modularity basis is required to derive the {kind} basis".format(kind=kind.value))
    eigenvalues = modularity_basis.eigenvalues
    if kind is OperatorKind.MODULARITY_PLUS:
        constant = eigenvalues.max() if shift_constant is None else shift_constant
        shifted = constant - eigenvalues
    elif kind is OperatorKind.MODULARITY_MINUS:
        constant = eigenvalues.min() if shift_constant is None else shift_constant
        shifted = eigenvalues - constant
    else:
        raise ConfigurationError("{kind} is not a shifted modularity operator".format(kind=kind.value))
    order = np.argsort(shifted, kind="stable")
    return SpectralBasis(eigenvectors=_frozen(modularity_basis.eigenvectors[:, order]),
                         eigenvalues=_frozen(shifted[order]), operator_kind=kind, ordering=ASCENDING,
                         graph=modularity_basis.graph)


def decompose(op):
    """Full symmetric eigendecomposition S = U diag(lambda) U' of a shift operator."""
    if op.n < 1:
        raise ConfigurationError("cannot decompose an empty operator")
    if op.kind.is_shifted:
        modularity_basis = decompose(ShiftOperator(OperatorKind.MODULARITY, op.graph))
        return derive_shifted_basis(modularity_basis, op.kind, shift_constant=op.shift_constant)

    dense = op.to_dense()
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(dense)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalFailureError("eigendecomposition of the {kind} operator failed: {e}".format(
            kind=op.kind.value, e=e), residual_norm=float("nan"))

    scale = max(float(np.max(np.abs(eigenvalues))), 1.0)
    residual = float(np.max(np.linalg.norm(dense @ eigenvectors - eigenvectors * eigenvalues, axis=0)))
    if not residual <= EIGEN_RESIDUAL_TOL * scale:
        raise NumericalFailureError("eigensolver did not converge for the {kind} operator".format(
            kind=op.kind.value), residual_norm=residual)

    if op.kind in _DESCENDING_KINDS:
        order = np.argsort(-eigenvalues, kind="stable")
        ordering = DESCENDING
    else:
        order = np.argsort(eigenvalues, kind="stable")
        ordering = ASCENDING
    eigenvectors = _canonical_signs(eigenvectors[:, order])
    logger.info("decomposed {kind} operator, n = {n}, residual = {residual:.3g}".format(
        kind=op.kind.value, n=op.n, residual=residual))
    return SpectralBasis(eigenvectors=_frozen(eigenvectors), eigenvalues=_frozen(eigenvalues[order]),
                         operator_kind=op.kind, ordering=ordering, graph=op.graph)


def extreme_eigenvalues(op):
    """(lambda_min, lambda_max) of the operator."""
    if op.n < 1:
        raise ConfigurationError("cannot decompose an empty operator")
    if op.kind.is_shifted:
        lambda_min, lambda_max = extreme_eigenvalues(ShiftOperator(OperatorKind.MODULARITY, op.graph))
        return 0.0, lambda_max - lambda_min
    try:
        eigenvalues = scipy.linalg.eigh(op.to_dense(), eigvals_only=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalFailureError("eigenvalue computation of the {kind} operator failed: {e}".format(
            kind=op.kind.value, e=e), residual_norm=float("nan"))
    return float(eigenvalues[0]), float(eigenvalues[-1])


def build_shift_operator(graph, kind, modularity_basis=None):
    """ShiftOperator of any kind, with the exact extreme eigenvalue of Q filled in for Q+ / Q-."""
    kind = OperatorKind(kind)
    if not kind.is_shifted:
        return ShiftOperator(kind, graph)
    if modularity_basis is not None:
        lambda_min, lambda_max = float(modularity_basis.eigenvalues.min()), float(modularity_basis.eigenvalues.max())
    else:
        lambda_min, lambda_max = extreme_eigenvalues(ShiftOperator(OperatorKind.MODULARITY, graph))
    constant = lambda_max if kind is OperatorKind.MODULARITY_PLUS else lambda_min
    return ShiftOperator(kind, graph, shift_constant=constant)


def gft(basis, x):
    check_signal_on_graph(x, basis.graph)
    return SpectralCoefficients(values=basis.eigenvectors.T @ x.values, basis=basis)


def igft(basis, xh):
    values = xh.values if isinstance(xh, SpectralCoefficients) else np.asarray(xh, dtype=float).ravel()
    if len(values) != basis.n:
        raise SignalGraphMismatchError("{length} spectral coefficients for a basis of size {n}".format(
            length=len(values), n=basis.n))
    return GraphSignal(basis.eigenvectors @ values, basis.graph)


def strictly_positive_indices(basis):
    return np.flatnonzero(basis.eigenvalues > basis.strict_tolerance())


def strictly_negative_indices(basis):
    return np.flatnonzero(basis.eigenvalues < -basis.strict_tolerance())


def require_basis_kind(basis, *kinds):
    if basis.operator_kind not in kinds:
        raise ConfigurationError("expected a {expected} basis, got {kind}".format(
            expected=" or ".join(kind.value for kind in kinds), kind=basis.operator_kind.value))


def weyl_interlacing_holds(adjacency_basis, modularity_basis, tol=1e-9):
    """
    Q = A - kk'/2M is A minus a rank-one positive semi-definite term, so in
    descending order lambda_{i+1}(A) <= lambda_i(Q) <= lambda_i(A).
    """
    require_basis_kind(adjacency_basis, OperatorKind.ADJACENCY)
    require_basis_kind(modularity_basis, OperatorKind.MODULARITY)
    a = adjacency_basis.eigenvalues
    q = modularity_basis.eigenvalues
    return bool(np.all(q <= a + tol) and np.all(a[1:] <= q[:-1] + tol))


def signal_profile(x, modularity_basis):
    """Norm and the L, Q, Q+ and Q- quadratic forms of a signal."""
    require_basis_kind(modularity_basis, OperatorKind.MODULARITY)
    check_signal_on_graph(x, modularity_basis.graph)
    squared_norm = float(x.values @ x.values)
    q_modularity = float(x.values @ ShiftOperator(OperatorKind.MODULARITY, x.graph).matvec(x.values))
    q_laplacian = float(x.values @ ShiftOperator(OperatorKind.LAPLACIAN, x.graph).matvec(x.values))
    return {
        "norm": float(np.sqrt(squared_norm)),
        "laplacian": q_laplacian,
        "modularity": q_modularity,
        "modularity_plus": float(modularity_basis.eigenvalues.max()) * squared_norm - q_modularity,
        "modularity_minus": q_modularity - float(modularity_basis.eigenvalues.min()) * squared_norm,
    }
