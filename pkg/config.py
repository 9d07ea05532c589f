import os

# logging
LOGGING_FOLDER = os.getenv("LOGGING_FOLDER", "logs")
LOGGING_LEVEL = os.getenv("LOGGING_LEVEL", "INFO")
LOGGING_MAX_FILE_SIZE_BYTES = int(os.getenv("LOGGING_MAX_FILE_SIZE_BYTES", 10 * 1024 * 1024))
LOGGING_LOCAL_BACK_UP_COUNT = int(os.getenv("LOGGING_LOCAL_BACK_UP_COUNT", 5))

# persistence
DEFAULT_OUT_DIR = os.getenv("DEFAULT_OUT_DIR", "results")
DEFAULT_CACHE_DIR = os.getenv("DEFAULT_CACHE_DIR", ".spectrum_cache")

# numerics
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", 2021))
STRICT_BAND_RELATIVE_TOL = float(os.getenv("STRICT_BAND_RELATIVE_TOL", 1e-9))
EIGEN_RESIDUAL_TOL = float(os.getenv("EIGEN_RESIDUAL_TOL", 1e-7))
DEFAULT_RANK_TOL = float(os.getenv("DEFAULT_RANK_TOL", 1e-10))

# sampling
DEFAULT_BANDWIDTH = int(os.getenv("DEFAULT_BANDWIDTH", 200))
DEFAULT_SAMPLE_COUNT = int(os.getenv("DEFAULT_SAMPLE_COUNT", 500))
DEFAULT_SAMPLING_NOISE_VARIANCE = float(os.getenv("DEFAULT_SAMPLING_NOISE_VARIANCE", 0.01))

# surrogates
DEFAULT_SURROGATE_COUNT = int(os.getenv("DEFAULT_SURROGATE_COUNT", 10000))
DEFAULT_ALPHA = float(os.getenv("DEFAULT_ALPHA", 0.05))
SURROGATE_CHUNK_SIZE = int(os.getenv("SURROGATE_CHUNK_SIZE", 500))
SURROGATE_WORKERS = int(os.getenv("SURROGATE_WORKERS", 1))

# denoising
DEFAULT_MU_GRID_MIN = float(os.getenv("DEFAULT_MU_GRID_MIN", 1e-3))
DEFAULT_MU_GRID_MAX = float(os.getenv("DEFAULT_MU_GRID_MAX", 1e3))
DEFAULT_MU_GRID_SIZE = int(os.getenv("DEFAULT_MU_GRID_SIZE", 30))
DEFAULT_NOISE_VARIANCES = [0.01, 0.25, 1.0]
DEFAULT_DENOISE_REALIZATIONS = int(os.getenv("DEFAULT_DENOISE_REALIZATIONS", 1))

# openflights
DATA_FOLDER = os.path.join(os.path.dirname(os.path.abspath(__file__)), "community_gsp", "src", "dataset", "data")
CONTINENT_TABLE_PATH = os.getenv("CONTINENT_TABLE_PATH", os.path.join(DATA_FOLDER, "continents.csv"))
TIMEZONE_TABLE_PATH = os.getenv("TIMEZONE_TABLE_PATH", os.path.join(DATA_FOLDER, "timezone_continents.csv"))
COMMUNITY_NAMES = ["Europe", "Africa", "Asia", "Oceania", "North America", "South America"]
NODES_OF_INTEREST = os.getenv("NODES_OF_INTEREST", "ATL,JFK").split(",")
