"""
Configuration management using pydantic-settings.
Loads from environment variables and .env file.
"""

from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load .env file explicitly
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(env_path)


class Settings(BaseSettings):
    """Main settings class with all configuration."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Output
    data_path: Path = Field(default=Path("./data"), alias="DATA_PATH")

    # Solver defaults
    max_iterations: int = Field(default=500, ge=1, alias="MAX_ITERATIONS")
    tolerance: float = Field(default=1e-6, ge=0.0, alias="TOLERANCE")
    default_seed: int = Field(default=0, ge=0, alias="DEFAULT_SEED")

    # Embedding-size sweep defaults
    j_init: int = Field(default=100, ge=1, alias="J_INIT")
    j_inc: int = Field(default=100, ge=1, alias="J_INC")
    j_fin: int = Field(default=1000, ge=1, alias="J_FIN")
    trials: int = Field(default=10, ge=1, alias="TRIALS")

    # Logging
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")
    log_renderer: str = Field(default="console", alias="LOG_RENDERER")

    def ensure_data_paths_exist(self) -> None:
        """Create the output directory if it doesn't exist."""
        self.data_path.mkdir(parents=True, exist_ok=True)


class SolverSettings:
    """Solver defaults wrapper."""
    def __init__(self, settings: Settings):
        self._settings = settings

    @property
    def max_iterations(self) -> int:
        return self._settings.max_iterations

    @property
    def tolerance(self) -> float:
        return self._settings.tolerance

    @property
    def seed(self) -> int:
        return self._settings.default_seed


class SweepSettings:
    """Sweep defaults wrapper."""
    def __init__(self, settings: Settings):
        self._settings = settings

    @property
    def j_init(self) -> int:
        return self._settings.j_init

    @property
    def j_inc(self) -> int:
        return self._settings.j_inc

    @property
    def j_fin(self) -> int:
        return self._settings.j_fin

    @property
    def trials(self) -> int:
        return self._settings.trials


class SettingsWrapper:
    """Grouped view over the flat settings."""
    def __init__(self):
        self._settings = Settings()
        self.solver = SolverSettings(self._settings)
        self.sweep = SweepSettings(self._settings)
        self.data_path = self._settings.data_path
        self.log_level = self._settings.log_level
        self.log_renderer = self._settings.log_renderer

    def ensure_data_paths_exist(self) -> None:
        self._settings.ensure_data_paths_exist()


def get_settings() -> SettingsWrapper:
    """Get settings instance."""
    return SettingsWrapper()
