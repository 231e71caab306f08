"""
Application configuration settings
"""
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    # Application settings
    app_name: str = "trop-morse"
    app_version: str = "1.0.0"

    # Logging
    log_level: str = "INFO"
    log_json: bool = False

    # Batch settings
    threads: int = 4  # TROP_MORSE_THREADS caps parallelism
    default_seed: int = 7

    # Random curve generation
    random_max_level: int = 5
    random_breakpoints: int = 2
    random_max_edges: int = 12

    # Exact oracles
    brute_force_max_det: int = 24
    ehrhart_kmax: int = 4

    # Moment map numerics
    moment_tolerance: float = 1e-9

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        if self.threads < 1:
            raise ValueError(
                "TROP_MORSE_THREADS must be a positive integer "
                f"(got {self.threads})"
            )

    class Config:
        env_file = ".env"
        env_prefix = "TROP_MORSE_"
        case_sensitive = False


# Global settings instance
settings = Settings()
