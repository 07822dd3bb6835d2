from functools import lru_cache

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # App settings
    APP_NAME: str = "hsbratteli"
    VERSION: str = "0.1.0"
    LOG_LEVEL: str = "WARNING"

    # Guards
    MAX_ENUMERATION: int = 10_000_000
    MAX_SYMMETRIC_SPAN: int = 4096

    # Horizons
    TELESCOPE_HORIZON: int = 16
    DEFAULT_HORIZON: int = 8

    # Reporting
    CONVERGENCE_TOLERANCE_PERCENT: int = 1
    DEFAULT_DECIMALS: int = 0

    class Config:
        env_file = ".env"
        env_prefix = "HSB_"
        case_sensitive = True


@lru_cache
def get_settings() -> Settings:
    return Settings()
