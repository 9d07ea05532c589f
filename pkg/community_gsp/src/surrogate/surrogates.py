from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd
from statsmodels.stats.multitest import multipletests

from config import DEFAULT_ALPHA, DEFAULT_SEED, DEFAULT_SURROGATE_COUNT, LOGGING_LEVEL, SURROGATE_CHUNK_SIZE, \
    SURROGATE_WORKERS
from community_gsp.src.errors import ConfigurationError
from community_gsp.src.graph.graph import check_signal_on_graph
from community_gsp.src.graph.shift_operator import OperatorKind
from community_gsp.src.spectral.spectral_basis import gft, igft, require_basis_kind
from utils.logger.pylogger import get_logger

logger = get_logger("surrogates", LOGGING_LEVEL)

# surrogate values within this fraction of max|x| of the original count as ties
TIE_RELATIVE_TOL = 1e-12


class SurrogateMode(Enum):
    ALL_LAPLACIAN = "all_laplacian"
    ALL_MODULARITY = "all_modularity"
    MODULAR_ONLY = "modular_only"
    ANTI_MODULAR_ONLY = "anti_modular_only"

    @property
    def basis_kind(self):
        return OperatorKind.LAPLACIAN if self is SurrogateMode.ALL_LAPLACIAN else OperatorKind.MODULARITY


class Correction(Enum):
    BONFERRONI = "bonferroni"
    NONE = "none"


class Tail(Enum):
    UPPER = "upper"
    TWO_SIDED = "two_sided"


@dataclass(frozen=True)
class SurrogateConfig:
    mode: SurrogateMode = SurrogateMode.MODULAR_ONLY
    count: int = DEFAULT_SURROGATE_COUNT
    seed: int = DEFAULT_SEED
    alpha: float = DEFAULT_ALPHA
    correction: Correction = Correction.BONFERRONI
    tail: Tail = Tail.UPPER
    chunk_size: int = SURROGATE_CHUNK_SIZE
    workers: int = SURROGATE_WORKERS

    def __post_init__(self):
        for name, enum_type in (("mode", SurrogateMode), ("correction", Correction), ("tail", Tail)):
            try:
                object.__setattr__(self, name, enum_type(getattr(self, name)))
            except ValueError:
                raise ConfigurationError("invalid surrogate {name}: {value}".format(name=name,
                                                                                   value=getattr(self, name)))
        if int(self.count) != self.count or self.count < 1:
            raise ConfigurationError("surrogate count must be a positive integer, got {count}".format(
                count=self.count))
        if not 0 < self.alpha < 1:
            raise ConfigurationError("alpha must be in (0, 1), got {alpha}".format(alpha=self.alpha))
        if self.chunk_size < 1 or self.workers < 1:
            raise ConfigurationError("chunk size and worker count must be positive")


@dataclass(frozen=True, eq=False)
class SurrogateTestResult:
    p_values: np.ndarray
    significant: np.ndarray
    threshold: float
    realizations_used: int
    adjusted_p_values: np.ndarray

    @property
    def significant_count(self):
        return int(self.significant.sum())

    def to_frame(self, x):
        return pd.DataFrame({"node_id": x.graph.node_ids, "value": x.values, "p_value": self.p_values,
                             "adjusted_p_value": self.adjusted_p_values, "significant": self.significant})


def flippable_components(basis, mode):
    """Boolean mask of the spectral components whose sign a surrogate may flip."""
    mode = SurrogateMode(mode)
    try:
        require_basis_kind(basis, mode.basis_kind)
    except ConfigurationError as e:
        raise ConfigurationError("surrogate mode {mode}: {e}".format(mode=mode.value, e=e))
    if mode is SurrogateMode.MODULAR_ONLY:
        return basis.eigenvalues > basis.strict_tolerance()
    if mode is SurrogateMode.ANTI_MODULAR_ONLY:
        return basis.eigenvalues < -basis.strict_tolerance()
    return np.ones(basis.n, dtype=bool)


def _random_signs(mask, rng, size=None):
    shape = (int(mask.sum()),) if size is None else (size, int(mask.sum()))
    return rng.integers(0, 2, size=shape) * 2.0 - 1.0


def surrogate_from_signs(basis, x, signs):
    """x_surr = U C x_hat for an explicit diagonal C given as a vector of +-1."""
    signs = np.asarray(signs, dtype=float)
    if signs.shape != (basis.n,) or not np.all(np.abs(signs) == 1):
        raise ConfigurationError("sign vector must hold {n} entries of +1 or -1".format(n=basis.n))
    return igft(basis, signs * gft(basis, x).values)


def generate_surrogate(basis, x, mode, rng):
    """One sign-randomized surrogate; components outside the mode's band keep their sign."""
    mask = flippable_components(basis, mode)
    signs = np.ones(basis.n)
    signs[mask] = _random_signs(mask, rng)
    return surrogate_from_signs(basis, x, signs)


def _exceedance_counts(eigenvectors, coefficients, mask, values, tie_tol, seed_sequences):
    """(#surr >= x, #surr <= x) per node over one chunk of per-realization seeds."""
    signs = np.ones((len(seed_sequences), len(coefficients)))
    for row, seed_sequence in enumerate(seed_sequences):
        signs[row, mask] = _random_signs(mask, np.random.default_rng(seed_sequence))
    surrogates = eigenvectors @ (signs * coefficients).T
    upper = np.sum(surrogates >= values[:, None] - tie_tol, axis=1)
    lower = np.sum(surrogates <= values[:, None] + tie_tol, axis=1)
    return upper, lower


def surrogate_test(basis, x, cfg):
    """
    Node-wise test of x against its sign-randomized surrogates.

    p_i = (1 + #{r : x_surr,r,i >= x_i}) / (1 + count) for the upper tail,
    twice the smaller tail (capped at 1) when two-sided. Each realization draws
    from its own child of SeedSequence(seed), so results do not depend on the
    chunk size or the number of workers.
    """
    check_signal_on_graph(x, basis.graph)
    mask = flippable_components(basis, cfg.mode)
    coefficients = gft(basis, x).values
    values = x.values
    tie_tol = TIE_RELATIVE_TOL * max(float(np.max(np.abs(values))), 1.0)

    seed_sequences = np.random.SeedSequence(cfg.seed).spawn(cfg.count)
    chunks = [seed_sequences[start:start + cfg.chunk_size] for start in range(0, cfg.count, cfg.chunk_size)]

    def run(chunk):
        return _exceedance_counts(basis.eigenvectors, coefficients, mask, values, tie_tol, chunk)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            counts = list(executor.map(run, chunks))
    else:
        counts = [run(chunk) for chunk in chunks]
    upper = np.sum([c[0] for c in counts], axis=0)
    lower = np.sum([c[1] for c in counts], axis=0)

    p_upper = (1.0 + upper) / (1.0 + cfg.count)
    if cfg.tail is Tail.TWO_SIDED:
        p_lower = (1.0 + lower) / (1.0 + cfg.count)
        p_values = np.minimum(1.0, 2.0 * np.minimum(p_upper, p_lower))
    else:
        p_values = p_upper

    if cfg.correction is Correction.BONFERRONI:
        threshold = cfg.alpha / basis.n
        adjusted = multipletests(p_values, alpha=cfg.alpha, method="bonferroni")[1]
    else:
        threshold = cfg.alpha
        adjusted = p_values.copy()
    if threshold < 1.0 / (1.0 + cfg.count):
        logger.warning("threshold {threshold:.3g} is below the smallest attainable p-value {p_min:.3g}; "
                       "no node can be significant with {count} surrogates".format(
                           threshold=threshold, p_min=1.0 / (1.0 + cfg.count), count=cfg.count))
    significant = p_values < threshold
    logger.info("surrogate test ({mode}, {count} realizations, {tail}): {hits} of {n} nodes significant".format(
        mode=cfg.mode.value, count=cfg.count, tail=cfg.tail.value, hits=int(significant.sum()), n=basis.n))
    return SurrogateTestResult(p_values=p_values, significant=significant, threshold=threshold,
                               realizations_used=cfg.count, adjusted_p_values=adjusted)
