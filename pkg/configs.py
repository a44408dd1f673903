import os
from functools import lru_cache

import numpy as np
from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

EULER_GAMMA = float(np.euler_gamma)
# log(2π) − 1 − γ/2, the linear coefficient in the Hadamard form of ξ
XI_LINEAR_COEFF = float(np.log(2 * np.pi) - 1.0 - EULER_GAMMA / 2)
# log(2π) − 1, the linear coefficient in the three-determinant form of ζ
ZETA_LINEAR_COEFF = float(np.log(2 * np.pi) - 1.0)

ROUTE_RTOL = 1e-10
CURVE_RTOL = 1e-10
DEFAULT_GAMMA_TERMS = 1_000_000
DEFAULT_SERIES_TERMS = 60
DEFAULT_TRUNCATION = 2000
DEFAULT_P_MAX = 8

# default tolerances of the verification reports
TAIL_SAFETY = 3.0
QUADRATURE_RTOL = 1e-6
GAMMA_ROUTE_RTOL = 1e-12
SLOPE_ATOL = 0.03
WEIL_RTOL = 1e-12

# accuracy targets for the reconstructions, fixed per check
FULL_HEIGHTS = 100_000
RELAXED_HEIGHTS = 1000
XI_RTOL = 1e-3
XI_SYMMETRY_RTOL = 2e-3
ZETA_RTOL = 2e-3
RELAXED_RTOL = 3e-2
GAMMA_RECON_RTOL = 1e-5
HADAMARD_RTOL = 1e-5
EULER_S2_RTOL = 5e-5
EULER_S3_RTOL = 1e-6

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseModel):
    """
    Runtime settings read from the environment (and an optional .env file).
    """

    threads: int = Field(..., ge=1, description="Worker cap for chunked products.")
    log_level: str = Field(..., description="Root logging level for the CLI.")
    zeros_path: str = Field(..., description="Default zero-height dataset file.")
    chunk_size: int = Field(..., ge=1, description="Entries per product chunk.")
    oracle_dim_bound: int = Field(..., ge=1, description="Largest dense oracle matrix.")
    field_bound: int = Field(..., ge=2, description="Largest field enumerated by brute force.")


@lru_cache
def get_settings() -> Settings:
    return Settings(
        threads=int(os.getenv("ZETAQUANT_THREADS", os.cpu_count() or 1)),
        log_level=os.getenv("ZETAQUANT_LOG_LEVEL", "WARNING").upper(),
        zeros_path=os.getenv("ZETAQUANT_ZEROS", "data/zeros.txt"),
        chunk_size=int(os.getenv("ZETAQUANT_CHUNK", 1 << 16)),
        oracle_dim_bound=int(os.getenv("ZETAQUANT_ORACLE_DIM", 64)),
        field_bound=int(os.getenv("ZETAQUANT_FIELD_BOUND", 1 << 14)),
    )
