import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

class Settings(BaseSettings):
    """Application settings and configuration."""

    # Application
    app_name: str = "EquiPerm"
    app_version: str = "1.0.0"
    debug: bool = os.getenv("DEBUG", "False").lower() == "true"
    log_level: str = os.getenv("LOG_LEVEL", "INFO")

    # Brute-force oracle limits
    oracle_max_dilation_size: int = int(os.getenv("ORACLE_MAX_DILATION_SIZE", "40"))
    oracle_max_candidates: int = int(os.getenv("ORACLE_MAX_CANDIDATES", str(10**8)))
    oracle_workers: int = int(os.getenv("ORACLE_WORKERS", "1"))

    # Exhaustive forest enumeration
    forest_check_max_m: int = int(os.getenv("FOREST_CHECK_MAX_M", "6"))

    # Series
    series_terms: int = int(os.getenv("SERIES_TERMS", "50"))
    phi_crosscheck_max_n: int = int(os.getenv("PHI_CROSSCHECK_MAX_N", "5"))

    # Output
    default_format: str = os.getenv("DEFAULT_FORMAT", "markdown")

    model_config = {
        "env_file": ".env",
        "case_sensitive": False,
        "extra": "ignore"
    }

# Global settings instance
settings = Settings()
