from community_gsp.src.analytics.denoising_report import get_denoising_report
from community_gsp.src.analytics.filtering_report import get_filtering_report
from community_gsp.src.analytics.sampling_report import get_sampling_report
from community_gsp.src.analytics.spectrum_report import get_spectrum_report
from community_gsp.src.analytics.surrogate_report import get_surrogate_report


class ExperimentAnalytics(object):

    @classmethod
    def get_spectrum_report(cls, data_store, cache, graph, folder, signal=None):
        return get_spectrum_report(data_store, cache, graph, folder, signal=signal)

    @classmethod
    def get_filtering_report(cls, data_store, cache, signal, filter_specs, folder, **kwargs):
        return get_filtering_report(data_store, cache, signal, filter_specs, folder, **kwargs)

    @classmethod
    def get_sampling_report(cls, data_store, cache, signal, folder, bandwidth, m, noise_variance, seed, rank_tol,
                            operators):
        return get_sampling_report(data_store, cache, signal, folder, bandwidth=bandwidth, m=m,
                                   noise_variance=noise_variance, seed=seed, rank_tol=rank_tol, operators=operators)

    @classmethod
    def get_surrogate_report(cls, data_store, cache, signal, configs, folder, partition=None):
        return get_surrogate_report(data_store, cache, signal, configs, folder, partition=partition)

    @classmethod
    def get_denoising_report(cls, data_store, cache, signal, folder, noise_variances, mu_grid, seed, realizations,
                             regularizers):
        return get_denoising_report(data_store, cache, signal, folder, noise_variances=noise_variances,
                                    mu_grid=mu_grid, seed=seed, realizations=realizations,
                                    regularizers=regularizers)
