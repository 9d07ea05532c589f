import numpy as np
import pandas as pd

from config import LOGGING_LEVEL
from community_gsp.src.denoise.tikhonov import REGULARIZER_KINDS, oracle_select
from community_gsp.src.errors import InvalidParameterError
from community_gsp.src.graph.shift_operator import OperatorKind
from utils.logger.pylogger import get_logger

logger = get_logger("denoising_report", LOGGING_LEVEL)


def get_unit_norm_signal(signal):
    norm = signal.norm()
    if norm == 0:
        raise InvalidParameterError("cannot normalize an all-zero signal to unit norm")
    return signal.with_values(signal.values / norm)


def get_noise_realizations(truth, noise_variances, realizations, seed):
    """Noisy copies of the truth, realizations per variance, each drawn from its own child seed."""
    children = iter(np.random.SeedSequence(seed).spawn(len(noise_variances) * realizations))
    noisy = dict()
    for noise_variance in noise_variances:
        noisy[noise_variance] = list()
        for _ in range(realizations):
            rng = np.random.default_rng(next(children))
            noise = rng.normal(0.0, np.sqrt(noise_variance), size=len(truth.values))
            noisy[noise_variance].append(truth.with_values(truth.values + noise))
    return noisy


def get_denoising_report(data_store, cache, signal, folder, noise_variances, mu_grid, seed, realizations=1,
                         regularizers=REGULARIZER_KINDS):
    if realizations < 1:
        raise InvalidParameterError("at least one noise realization is needed")
    truth = get_unit_norm_signal(signal)
    noisy = get_noise_realizations(truth, noise_variances, realizations, seed)
    bases = {OperatorKind(kind): cache.get_basis(signal.graph, kind) for kind in regularizers}

    result = dict()
    for noise_variance in noise_variances:
        per_kind = dict()
        for kind, basis in bases.items():
            sweeps = [oracle_select(y, truth, kind, mu_grid=mu_grid, basis=basis) for y in noisy[noise_variance]]
            mu_values = sweeps[0].mu_grid
            rms = np.mean([sweep.per_mu_rms for sweep in sweeps], axis=0)
            best = int(np.argmin(rms))
            data_store.write_dataframe(folder, "sweep_{kind}_sigma2_{sigma2:g}.csv".format(
                kind=kind.value, sigma2=noise_variance), pd.DataFrame({"mu": mu_values, "rms": rms}))
            per_kind[kind.value] = {"best_mu": float(mu_values[best]), "best_rms": float(rms[best])}
        ranking = sorted(per_kind, key=lambda name: per_kind[name]["best_rms"])
        best_rms = [per_kind[name]["best_rms"] for name in ranking]
        result["{sigma2:g}".format(sigma2=noise_variance)] = {
            "sigma2": noise_variance,
            "seed": seed,
            "realizations": realizations,
            "regularizers": per_kind,
            "ranking": ranking,
            "worst_to_best_ratio": best_rms[-1] / best_rms[0] if best_rms[0] > 0 else None,
        }
        logger.info("denoising at sigma2 = {sigma2:g}: {ranking}".format(sigma2=noise_variance,
                                                                          ranking=" < ".join(ranking)))
    return result
