# vibrakit/config/settings.py

from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..errors import ConfigError


class RuntimeSettings(BaseSettings):
    """Process-level guards read from VIBRAKIT_* environment variables"""

    model_config = SettingsConfigDict(env_prefix='VIBRAKIT_', extra='ignore')

    max_dof: int = Field(default=20000, gt=0, description="Largest free-DOF count accepted")
    home: Path = Field(default=Path.home() / ".vibrakit", description="Config/log directory")


class Thresholds(BaseModel):
    """Requirement limits; every default comes from the mission's verification rules"""

    floor_hz: float = Field(default=60.0, gt=0, description="Minimum first natural frequency")
    separation_ratio: float = Field(default=2.0, gt=0, description="Fixture/article f1 ratio")
    ratio_limit: float = Field(default=0.30, gt=0, description="S_max/F_tu limit (strict)")
    fs_yield: float = Field(default=1.5, gt=0)
    fs_ultimate: float = Field(default=2.0, gt=0)
    dominance_ratio: float = Field(default=2.0, gt=0, description="Mode axis dominance ratio")
    effective_mass_floor_kg: float = Field(default=0.0, ge=0, description="Report filter")
    q: float = Field(default=10.0, gt=0.5, description="Resonance amplification for Miles")
    min_reference_psd: float = Field(default=1e-12, gt=0)
    handling_mass_kg: float = Field(default=22.5, gt=0, description="90% of a 25 kg lift")


class SolverOptions(BaseModel):
    drilling_factor: float = Field(default=1e-6, gt=0)
    thickness_max_iter: int = Field(default=60, gt=0)
    workers: int = Field(default=1, ge=1)


class Config:
    """Configuration management for vibrakit"""

    DEFAULT_CONFIG_DIR = Path.home() / ".vibrakit"

    def __init__(self, config_dir: Optional[Path] = None):
        self.runtime = RuntimeSettings()
        self.config_dir = config_dir or self.runtime.home or self.DEFAULT_CONFIG_DIR
        self.logs_dir = self.config_dir / "logs"
        self.global_config_path = self.config_dir / "config.yaml"

        self._ensure_directories()

    def _ensure_directories(self):
        """Ensure configuration directories exist"""
        self.config_dir.mkdir(parents=True, exist_ok=True)
        self.logs_dir.mkdir(parents=True, exist_ok=True)

    def _load_yaml(self, path: Path) -> Dict[str, Any]:
        """Load YAML file"""
        if not path.exists():
            return {}
        with open(path, 'r') as f:
            try:
                data = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise ConfigError(f"{path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be a mapping")
        return data

    def _save_yaml(self, path: Path, data: Dict[str, Any]):
        """Save YAML file"""
        with open(path, 'w') as f:
            yaml.dump(data, f, default_flow_style=False, sort_keys=False)

    def load_global_config(self) -> Dict[str, Any]:
        """Load global configuration"""
        return self._load_yaml(self.global_config_path)

    def save_global_config(self, config: Dict[str, Any]):
        self._save_yaml(self.global_config_path, config)

    def thresholds(self, **overrides: Any) -> Thresholds:
        """Thresholds from config.yaml with non-None keyword overrides applied"""
        section = dict(self.load_global_config().get('thresholds') or {})
        section.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return Thresholds(**section)
        except ValidationError as e:
            raise ConfigError(f"invalid thresholds: {e}") from e

    def solver_options(self, **overrides: Any) -> SolverOptions:
        section = dict(self.load_global_config().get('solver') or {})
        section.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return SolverOptions(**section)
        except ValidationError as e:
            raise ConfigError(f"invalid solver options: {e}") from e

    @property
    def max_dof(self) -> int:
        return self.runtime.max_dof
