"""Configuration management using pydantic-settings."""

from pathlib import Path
from typing import Any, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from .spin.system import NoiseModel, SpinSystem


class Settings(BaseSettings):
    """Run configuration loaded from defaults, environment, a key=value file and flags."""

    model_config = SettingsConfigDict(
        env_file=None,
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Theory sweeps
    gamma: float = Field(default=1.0, gt=0, description="Jumping rate for theory sweeps (1/time)")
    n_nodes: int = Field(default=4, ge=3, description="Nodes on the circle swept by the walk command")
    grid_points: int = Field(default=200, ge=2, description="Points per theory curve")

    # Emulated NMR processor
    j_hz: float = Field(default=215.0, gt=0, description="Scalar coupling J in Hz")
    t2_proton: float = Field(default=0.4, gt=0, description="Proton (spin 1) T2 in seconds")
    t2_carbon: float = Field(default=0.3, gt=0, description="Carbon (spin 2) T2 in seconds")
    offset_proton: float = Field(default=0.0, description="Proton resonance offset in Hz")
    offset_carbon: float = Field(default=0.0, description="Carbon resonance offset in Hz")
    noise: bool = Field(default=True, description="Apply T2 dephasing during delays")

    # Output and verification
    output_dir: Path = Field(default=Path("ctqw-out"), description="Directory for CSV output")
    seed: int = Field(default=2004, description="Seed of the random draws in the verification suite")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # Flags, then the --config file, then the environment
        return init_settings, dotenv_settings, env_settings, file_secret_settings

    def spin_system(self) -> SpinSystem:
        """Spin-pair constants, spin 1 being the proton."""
        return SpinSystem(
            j_coupling=self.j_hz,
            offset_1=self.offset_proton,
            offset_2=self.offset_carbon,
            t2_spin1=self.t2_proton,
            t2_spin2=self.t2_carbon,
        )

    def noise_model(self) -> NoiseModel:
        """Dephasing switch."""
        return NoiseModel(enabled=self.noise)

    def ensure_output_dir(self) -> Path:
        """Create the output directory if needed and return it."""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir


def load_settings(config_file: Optional[Path] = None, **overrides: Any) -> Settings:
    """Build settings; explicit overrides beat the config file, which beats the environment.

    Args:
        config_file: Flat key=value file (dotenv syntax, # comments allowed)
        **overrides: Values from command-line flags; None means "not given"

    Returns:
        Validated Settings
    """
    given = {key: value for key, value in overrides.items() if value is not None}
    if config_file is not None:
        return Settings(_env_file=config_file, **given)
    return Settings(**given)


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Reset settings (useful for testing)."""
    global _settings
    _settings = None
