import math
from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import ValidationError, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from ptfloquet.core.analysis import DEFAULT_ENERGY_TOL, DEFAULT_IPR_MIN, Plane
from ptfloquet.core.errors import ConfigError
from ptfloquet.models.model import DriveKind, GridAxis


class RunSettings(BaseSettings):
    ''' Every knob of a run; physical parameters are ratios to v_T (or J for two-site drives) '''
    dimers: int = 20
    v_over_vt: str | None = None
    gamma_over_vt: str | None = None
    omega_over_vt: str | None = None
    j_coupling: float = 1.0
    drive: DriveKind = DriveKind.PT_PT
    plane: Plane = Plane.OMEGA_GAMMA
    grid: str | None = None
    out: Path | None = None
    format: Literal["csv", "json"] = "csv"
    energy_tol: float = DEFAULT_ENERGY_TOL
    degeneracy_tol: float = DEFAULT_ENERGY_TOL
    ipr_min: float = DEFAULT_IPR_MIN
    workers: int = 1
    defective_fraction: float = 0.1
    families: str | None = None
    resolution: int = 50
    samples: int = 10_000
    perturb: str | None = None
    bulk: bool = False

    # a config file is plain key=value lines; the environment is never read
    model_config = SettingsConfigDict(env_file=None, case_sensitive=False, extra="forbid")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return init_settings, dotenv_settings

    @field_validator("dimers", "workers")
    @classmethod
    def check_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("resolution", "samples")
    @classmethod
    def check_resolution(cls, value: int) -> int:
        if value < 2:
            raise ValueError("must be at least 2")
        return value

    @field_validator("j_coupling", "energy_tol", "degeneracy_tol", "ipr_min", "defective_fraction")
    @classmethod
    def check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value

    @field_validator("v_over_vt", "gamma_over_vt", "omega_over_vt")
    @classmethod
    def check_axis(cls, value: str | None) -> str | None:
        if value is not None:
            GridAxis.parse("axis", value)
        return value

    @field_validator("grid")
    @classmethod
    def check_grid(cls, value: str | None) -> str | None:
        if value is not None:
            parse_grid(value)
        return value

    def axis(self, field: str, default: str) -> GridAxis:
        text = getattr(self, field)
        return GridAxis.parse(field, default if text is None else text)

    def scalar(self, field: str, default: float) -> float:
        axis = self.axis(field, str(default))
        if len(axis) != 1:
            raise ConfigError(f"--{field.replace('_', '-')} must be a single value here")
        return axis.values[0]

    def family_list(self) -> list[str] | None:
        if self.families is None:
            return None
        return [name.strip() for name in self.families.split(",") if name.strip()]

    def echo(self) -> dict:
        ''' Configuration written into output metadata; the output path is left out '''
        return self.model_dump(mode="json", exclude={"out"})


def parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"grid must look like NxM, got {text!r}")
    nx, ny = int(parts[0]), int(parts[1])
    if nx < 2 or ny < 2:
        raise ValueError("grid resolution must be at least 2 in each direction")
    return nx, ny


def load_settings(config_file: Path | None = None, **overrides) -> RunSettings:
    ''' Config file values overridden by every flag that was actually given '''
    if config_file is not None and not Path(config_file).is_file():
        raise FileNotFoundError(f"config file not found: {config_file}")
    given = {key: value for key, value in overrides.items() if value is not None}
    try:
        return RunSettings(_env_file=config_file, **given)
    except ValidationError as error:
        raise ConfigError(str(error)) from error


@lru_cache()
def get_settings() -> RunSettings:
    return RunSettings()
