from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import *
from community_gsp.src.denoise.tikhonov import REGULARIZER_KINDS
from community_gsp.src.errors import ConfigurationError
from community_gsp.src.filters.spectral_window import parse_filter_spec
from community_gsp.src.graph.shift_operator import OperatorKind
from community_gsp.src.surrogate.surrogates import Correction, SurrogateMode, Tail


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GlobalConfig(StrictModel):
    seed: int = DEFAULT_SEED
    out_dir: str = DEFAULT_OUT_DIR
    cache_dir: str = DEFAULT_CACHE_DIR


class GraphInput(StrictModel):
    edges: str
    signal: Optional[str] = None
    partition: Optional[str] = None


class SpectrumConfig(GraphInput):
    pass


class FilterConfig(GraphInput):
    signal: str
    filters: List[str] = ["modular", "antimodular", "smooth", "nonsmooth"]
    band_operator: OperatorKind = OperatorKind.MODULARITY
    polynomial: Optional[List[float]] = None
    polynomial_operator: OperatorKind = OperatorKind.MODULARITY
    nodes_of_interest: List[str] = NODES_OF_INTEREST

    @field_validator("filters")
    @classmethod
    def check_filters(cls, filters):
        if not filters:
            raise ValueError("at least one filter is required")
        for text in filters:
            try:
                parse_filter_spec(text)
            except ConfigurationError as e:
                raise ValueError(str(e))
        return filters


class SampleConfig(GraphInput):
    signal: str
    operators: List[OperatorKind] = [OperatorKind.LAPLACIAN, OperatorKind.MODULARITY]
    bandwidth: int = Field(default=DEFAULT_BANDWIDTH, ge=1)
    m: int = Field(default=DEFAULT_SAMPLE_COUNT, ge=1)
    noise_variance: float = Field(default=DEFAULT_SAMPLING_NOISE_VARIANCE, ge=0)
    rank_tol: float = Field(default=DEFAULT_RANK_TOL, gt=0)

    @field_validator("operators")
    @classmethod
    def check_operators(cls, operators):
        if not operators:
            raise ValueError("at least one operator is required")
        for operator in operators:
            if operator not in (OperatorKind.LAPLACIAN, OperatorKind.MODULARITY):
                raise ValueError("sampling supports the laplacian and modularity operators, got {operator}".format(
                    operator=operator.value))
        return list(dict.fromkeys(operators))


class SurrogateRunConfig(GraphInput):
    signal: str
    modes: List[SurrogateMode] = [SurrogateMode.MODULAR_ONLY]
    count: int = Field(default=DEFAULT_SURROGATE_COUNT, ge=1)
    alpha: float = Field(default=DEFAULT_ALPHA, gt=0, lt=1)
    correction: Correction = Correction.BONFERRONI
    tail: Tail = Tail.UPPER
    chunk_size: int = Field(default=SURROGATE_CHUNK_SIZE, ge=1)
    workers: int = Field(default=SURROGATE_WORKERS, ge=1)

    @field_validator("modes")
    @classmethod
    def check_modes(cls, modes):
        if not modes:
            raise ValueError("at least one surrogate mode is required")
        return list(dict.fromkeys(modes))


class DenoiseConfig(GraphInput):
    signal: str
    noise_variances: List[float] = DEFAULT_NOISE_VARIANCES
    regularizers: List[OperatorKind] = list(REGULARIZER_KINDS)
    mu_min: float = Field(default=DEFAULT_MU_GRID_MIN, gt=0)
    mu_max: float = Field(default=DEFAULT_MU_GRID_MAX, gt=0)
    mu_count: int = Field(default=DEFAULT_MU_GRID_SIZE, ge=1)
    realizations: int = Field(default=DEFAULT_DENOISE_REALIZATIONS, ge=1)

    @field_validator("noise_variances")
    @classmethod
    def check_noise_variances(cls, noise_variances):
        if not noise_variances or min(noise_variances) < 0:
            raise ValueError("noise variances must be a non-empty list of non-negative numbers")
        return noise_variances

    @field_validator("regularizers")
    @classmethod
    def check_regularizers(cls, regularizers):
        if not regularizers:
            raise ValueError("at least one regularizer is required")
        for kind in regularizers:
            if kind not in REGULARIZER_KINDS:
                raise ValueError("regularizer must be laplacian, modularity_plus or modularity_minus, "
                                 "got {kind}".format(kind=kind.value))
        return list(dict.fromkeys(regularizers))

    @model_validator(mode="after")
    def check_mu_range(self):
        if self.mu_min > self.mu_max:
            raise ValueError("mu_min must not exceed mu_max")
        return self


class IngestConfig(StrictModel):
    airports: str
    routes: str
    restrict_to_largest_component: bool = True
    drop_unmappable_continent: bool = True
    continent_table: str = CONTINENT_TABLE_PATH
    timezone_table: str = TIMEZONE_TABLE_PATH


class FixtureConfig(StrictModel):
    names: List[str] = ["toy10", "k3", "barbell6", "planted_hub"]


COMMAND_MODELS = {
    "spectrum": SpectrumConfig,
    "filter": FilterConfig,
    "sample": SampleConfig,
    "surrogate": SurrogateRunConfig,
    "denoise": DenoiseConfig,
    "ingest-openflights": IngestConfig,
    "fixture": FixtureConfig,
}
