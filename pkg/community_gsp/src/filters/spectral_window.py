from dataclasses import dataclass
from enum import Enum

import numpy as np

from config import LOGGING_LEVEL
from community_gsp.src.errors import ConfigurationError, InvalidPassbandError, SignalGraphMismatchError
from community_gsp.src.graph.graph import GraphSignal, check_signal_on_graph
from community_gsp.src.graph.shift_operator import OperatorKind
from community_gsp.src.spectral.spectral_basis import (SpectralBasis, require_basis_kind, strictly_negative_indices,
                                                       strictly_positive_indices)
from utils.logger.pylogger import get_logger

logger = get_logger("spectral_window", LOGGING_LEVEL)


class PassbandKind(Enum):
    MODULAR = "modular"
    ANTI_MODULAR = "antimodular"
    SMOOTH = "smooth"
    NON_SMOOTH = "nonsmooth"
    EXPLICIT_RANGE = "band"


class Weighting(Enum):
    FLAT = "flat"
    ABS_WEIGHTED = "absweighted"


BASIS_KIND_FOR_PASSBAND = {
    PassbandKind.MODULAR: OperatorKind.MODULARITY,
    PassbandKind.ANTI_MODULAR: OperatorKind.MODULARITY,
    PassbandKind.SMOOTH: OperatorKind.LAPLACIAN,
    PassbandKind.NON_SMOOTH: OperatorKind.LAPLACIAN,
}


@dataclass(frozen=True)
class PassbandSpec:
    """Eigen-index interval [first, last], 1-based and inclusive, in the basis ordering."""
    kind: PassbandKind
    first: int
    last: int
    weighting: Weighting = Weighting.ABS_WEIGHTED

    def __post_init__(self):
        if not 1 <= self.first <= self.last:
            raise InvalidPassbandError("passband [{first}, {last}] is empty or starts below 1".format(
                first=self.first, last=self.last))

    @property
    def size(self):
        return self.last - self.first + 1

    def indices(self):
        return np.arange(self.first - 1, self.last)


@dataclass(frozen=True, eq=False)
class SpectralWindow:
    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float).ravel()
        if not np.all(np.isfinite(weights)):
            raise InvalidPassbandError("spectral window weights must be finite")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self):
        return len(self.weights)


@dataclass(frozen=True)
class FilterSpec:
    kind: PassbandKind
    first: int = None
    last: int = None
    weighting: Weighting = Weighting.ABS_WEIGHTED

    @property
    def text(self):
        if self.kind is PassbandKind.EXPLICIT_RANGE:
            return "band:{first}:{last}:{weighting}".format(first=self.first, last=self.last,
                                                            weighting=self.weighting.value)
        return self.kind.value


def parse_filter_spec(text):
    """Parse ``modular | antimodular | smooth | nonsmooth | band:N1:N2:flat | band:N1:N2:absweighted``."""
    text = text.strip().lower()
    if not text.startswith("band"):
        try:
            kind = PassbandKind(text)
        except ValueError:
            raise ConfigurationError("unknown filter '{text}'".format(text=text))
        if kind is PassbandKind.EXPLICIT_RANGE:
            raise ConfigurationError("band filters need the form band:N1:N2:flat|absweighted")
        return FilterSpec(kind=kind)
    parts = text.split(":")
    if len(parts) != 4 or parts[0] != "band":
        raise ConfigurationError("band filters need the form band:N1:N2:flat|absweighted, got '{text}'".format(
            text=text))
    try:
        first, last = int(parts[1]), int(parts[2])
        weighting = Weighting(parts[3])
    except ValueError:
        raise ConfigurationError("cannot parse filter '{text}'".format(text=text))
    PassbandSpec(PassbandKind.EXPLICIT_RANGE, first, last, weighting)
    return FilterSpec(kind=PassbandKind.EXPLICIT_RANGE, first=first, last=last, weighting=weighting)


def _band_count(reference, kind):
    if isinstance(reference, SpectralBasis):
        require_basis_kind(reference, OperatorKind.MODULARITY)
        if kind is PassbandKind.SMOOTH:
            return len(strictly_positive_indices(reference))
        return len(strictly_negative_indices(reference))
    return int(reference)


def resolve_passband(basis, kind, reference=None):
    """
    Index range of a named filter.

    Modular / anti-modular bands hold the strictly positive / negative eigenvalues
    of a modularity basis. Smooth / non-smooth bands take the same number of
    Laplacian components from the low / high end; ``reference`` is the modularity
    basis (or the component count) they are matched to.
    """
    kind = PassbandKind(kind)
    if kind is PassbandKind.EXPLICIT_RANGE:
        raise ConfigurationError("explicit ranges are given directly as a PassbandSpec")
    require_basis_kind(basis, BASIS_KIND_FOR_PASSBAND[kind])
    n = basis.n
    if kind is PassbandKind.MODULAR:
        count = len(strictly_positive_indices(basis))
        first, last = 1, count
    elif kind is PassbandKind.ANTI_MODULAR:
        count = len(strictly_negative_indices(basis))
        first, last = n - count + 1, n
    else:
        if reference is None:
            raise ConfigurationError("{kind} passband is matched to a modularity band; pass the modularity "
                                     "basis as reference".format(kind=kind.value))
        count = min(_band_count(reference, kind), n)
        first, last = (1, count) if kind is PassbandKind.SMOOTH else (n - count + 1, n)
    if count == 0:
        raise InvalidPassbandError("{kind} passband is empty for this graph".format(kind=kind.value))
    logger.debug("{kind} passband resolved to [{first}, {last}]".format(kind=kind.value, first=first, last=last))
    return PassbandSpec(kind=kind, first=first, last=last)


def band_window(basis, pb):
    """
    Window with |lambda_i| / sum_band |lambda_k| inside the band (one minus that
    for the smooth filter, plain ones for flat explicit bands) and zero outside.
    """
    if pb.last > basis.n:
        raise InvalidPassbandError("passband [{first}, {last}] exceeds the basis size {n}".format(
            first=pb.first, last=pb.last, n=basis.n))
    weights = np.zeros(basis.n)
    band = pb.indices()
    if pb.kind is PassbandKind.EXPLICIT_RANGE and pb.weighting is Weighting.FLAT:
        weights[band] = 1.0
        return SpectralWindow(weights)

    magnitudes = np.abs(basis.eigenvalues[band])
    total = magnitudes.sum()
    if total > 0:
        ratio = magnitudes / total
    elif pb.kind is PassbandKind.SMOOTH:
        ratio = np.zeros(len(band))
    else:
        raise InvalidPassbandError("passband [{first}, {last}] carries no spectral weight".format(
            first=pb.first, last=pb.last))
    weights[band] = 1.0 - ratio if pb.kind is PassbandKind.SMOOTH else ratio
    return SpectralWindow(weights)


paper_window = band_window


def apply_window(basis, w, x):
    """x_out = U diag(h) U' x"""
    check_signal_on_graph(x, basis.graph)
    if w.n != basis.n:
        raise SignalGraphMismatchError("window has {length} weights but basis has {n} components".format(
            length=w.n, n=basis.n))
    u = basis.eigenvectors
    return GraphSignal(u @ (w.weights * (u.T @ x.values)), basis.graph)


def window_for_filter(filter_spec, basis, reference=None):
    if filter_spec.kind is PassbandKind.EXPLICIT_RANGE:
        pb = PassbandSpec(PassbandKind.EXPLICIT_RANGE, filter_spec.first, filter_spec.last, filter_spec.weighting)
    else:
        pb = resolve_passband(basis, filter_spec.kind, reference=reference)
    return pb, band_window(basis, pb)
