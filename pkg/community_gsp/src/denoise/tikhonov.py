from dataclasses import dataclass

import numpy as np
import pandas as pd

from config import DEFAULT_MU_GRID_MAX, DEFAULT_MU_GRID_MIN, DEFAULT_MU_GRID_SIZE, LOGGING_LEVEL
from community_gsp.src.errors import ConfigurationError, InvalidParameterError
from community_gsp.src.graph.graph import GraphSignal, check_signal_on_graph
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator
from community_gsp.src.spectral.spectral_basis import decompose, derive_shifted_basis, gft, igft
from utils.logger.pylogger import get_logger

logger = get_logger("tikhonov", LOGGING_LEVEL)

REGULARIZER_KINDS = (OperatorKind.LAPLACIAN, OperatorKind.MODULARITY_PLUS, OperatorKind.MODULARITY_MINUS)


@dataclass(frozen=True, eq=False)
class DenoiseProblem:
    y: GraphSignal
    regularizer: OperatorKind
    mu: float

    def __post_init__(self):
        try:
            kind = OperatorKind(self.regularizer)
        except ValueError:
            raise ConfigurationError("unknown regularizer {kind}".format(kind=self.regularizer))
        if kind not in REGULARIZER_KINDS:
            raise ConfigurationError("regularizer must be laplacian, modularity_plus or modularity_minus, "
                                     "got {kind}".format(kind=kind.value))
        object.__setattr__(self, "regularizer", kind)
        if not np.isfinite(self.mu) or self.mu < 0:
            raise InvalidParameterError("mu must be a finite non-negative number, got {mu}".format(mu=self.mu))


@dataclass(frozen=True, eq=False)
class OracleSweep:
    regularizer: OperatorKind
    mu_grid: np.ndarray
    truth: GraphSignal
    per_mu_rms: np.ndarray
    best_mu: float
    best_rms: float
    best_signal: GraphSignal

    def to_frame(self):
        return pd.DataFrame({"mu": self.mu_grid, "rms": self.per_mu_rms})


def default_mu_grid():
    return np.logspace(np.log10(DEFAULT_MU_GRID_MIN), np.log10(DEFAULT_MU_GRID_MAX), DEFAULT_MU_GRID_SIZE)


def regularizer_basis(graph, kind, basis=None):
    """Eigenbasis of the regularizer P; a modularity basis is shifted instead of recomputed."""
    kind = OperatorKind(kind)
    if basis is not None and basis.operator_kind is kind:
        return basis
    if basis is not None and basis.operator_kind is OperatorKind.MODULARITY and kind.is_shifted:
        return derive_shifted_basis(basis, kind)
    if basis is not None:
        raise ConfigurationError("a {have} basis cannot serve as the {want} regularizer".format(
            have=basis.operator_kind.value, want=kind.value))
    if kind.is_shifted:
        return derive_shifted_basis(decompose(ShiftOperator(OperatorKind.MODULARITY, graph)), kind)
    return decompose(ShiftOperator(kind, graph))


def objective(y, x, op, mu):
    """||x - y||^2 + mu x'Px."""
    residual = x.values - y.values
    return float(residual @ residual + mu * (x.values @ op.matvec(x.values)))


def denoise(prob, basis=None):
    """x* = (I + mu P)^-1 y, computed coefficient-wise as y_hat_i / (1 + mu lambda_i)."""
    basis = regularizer_basis(prob.y.graph, prob.regularizer, basis)
    check_signal_on_graph(prob.y, basis.graph)
    # shifted spectra are >= 0 up to rounding
    eigenvalues = np.maximum(basis.eigenvalues, 0.0)
    return igft(basis, gft(basis, prob.y).values / (1.0 + prob.mu * eigenvalues))


def rms_error(estimate, truth):
    return float(np.linalg.norm(estimate.values - truth.values) / np.sqrt(len(truth.values)))


def oracle_select(y, truth, kind, mu_grid=None, basis=None):
    """Denoise at every mu of the grid and keep the one closest to the truth in RMS (ties to the smaller mu)."""
    mu_grid = default_mu_grid() if mu_grid is None else np.asarray(mu_grid, dtype=float).ravel()
    if len(mu_grid) == 0 or np.any(mu_grid <= 0) or not np.all(np.isfinite(mu_grid)):
        raise InvalidParameterError("mu grid must be a non-empty list of positive numbers")
    check_signal_on_graph(truth, y.graph)
    basis = regularizer_basis(y.graph, kind, basis)

    order = np.argsort(mu_grid, kind="stable")
    mu_grid = mu_grid[order]
    estimates = [denoise(DenoiseProblem(y=y, regularizer=kind, mu=mu), basis=basis) for mu in mu_grid]
    per_mu_rms = np.array([rms_error(estimate, truth) for estimate in estimates])
    best = int(np.argmin(per_mu_rms))
    logger.info("oracle {kind}: best mu = {mu:.4g}, rms = {rms:.4g}".format(kind=basis.operator_kind.value,
                                                                           mu=mu_grid[best], rms=per_mu_rms[best]))
    return OracleSweep(regularizer=basis.operator_kind, mu_grid=mu_grid, truth=truth, per_mu_rms=per_mu_rms,
                       best_mu=float(mu_grid[best]), best_rms=float(per_mu_rms[best]), best_signal=estimates[best])
