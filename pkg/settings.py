"""
Runtime configuration loaded from the environment and .env
"""

import logging
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables
load_dotenv()

TOOL_VERSION = "1.0.0"


class Settings(BaseSettings):
    """Defaults for solver and CLI; override with TRA_* variables"""

    model_config = SettingsConfigDict(env_prefix="TRA_", env_file=".env", extra="ignore")

    basis_size: int = 50
    max_basis_size: int = 100_000
    # dense N x N eigenvector matrices; larger bases use selected eigenpairs
    max_vector_basis_size: int = 5000
    decimals: int = 9
    output_format: Literal["csv", "json"] = "csv"
    units: Literal["dimensionless", "physical"] = "dimensionless"
    sweep_workers: int = 4
    log_level: str = "WARNING"

    # solver tolerances
    convergence_tol: float = 1e-3
    reconstruction_max_terms: int = 6400
    fit_tolerance: float = 1e-2
    residual_tol: float = 1e-10

    # finite-difference oracle
    fd_intervals: int = 2000
    scarf_clip_points: int = 5

    # Morse basis parameter when none is given
    morse_nu: float = 1.0


@lru_cache
def get_settings() -> Settings:
    return Settings()


def configure_logging(level: str = None) -> None:
    """Send library log records to stderr at the configured level"""
    level = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
