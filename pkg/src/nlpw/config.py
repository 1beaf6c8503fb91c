"""Configuration module for nlpw."""

import json
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import ParameterDomainError


class Config:
    """Environment-driven defaults for nlpw."""

    # Logging Configuration
    LOG_LEVEL: str = os.environ.get("NLPW_LOG_LEVEL") or "INFO"

    # Parallelism Configuration
    THREADS: Optional[int] = None  # None = default (min(32, cpu_count + 4))
    if os.environ.get("NLPW_THREADS"):
        THREADS = int(os.environ.get("NLPW_THREADS"))

    # Reproducibility
    SEED: int = int(os.environ.get("NLPW_SEED") or "0")

    # Memo tables
    CACHE_MAX_SIZE: int = int(os.environ.get("NLPW_CACHE_SIZE") or "4096")

    # Quadrature Configuration
    QUAD_MAX_LEVELS: int = int(os.environ.get("NLPW_QUAD_MAX_LEVELS") or "12")
    QUAD_ABS_TOL: float = float(os.environ.get("NLPW_QUAD_ABS_TOL") or "1e-12")
    QUAD_REL_TOL: float = float(os.environ.get("NLPW_QUAD_REL_TOL") or "1e-11")
    DIVERGENCE_CAP: float = float(os.environ.get("NLPW_DIVERGENCE_CAP") or "1e12")

    # Solver Configuration
    SOLVER_MAX_ITER: int = int(os.environ.get("NLPW_MAX_ITER") or "20000")
    SOLVER_GRAD_TOL: float = float(os.environ.get("NLPW_GRAD_TOL") or "1e-8")

    @classmethod
    def get_env_info(cls) -> dict:
        """Get environment configuration information."""
        return {
            "log_level": cls.LOG_LEVEL,
            "threads": cls.THREADS or "auto",
            "seed": cls.SEED,
            "cache_max_size": cls.CACHE_MAX_SIZE,
            "quad_max_levels": cls.QUAD_MAX_LEVELS,
            "quad_abs_tol": cls.QUAD_ABS_TOL,
            "quad_rel_tol": cls.QUAD_REL_TOL,
            "divergence_cap": cls.DIVERGENCE_CAP,
            "solver_max_iter": cls.SOLVER_MAX_ITER,
            "solver_grad_tol": cls.SOLVER_GRAD_TOL,
        }

    @classmethod
    def validate_config(cls) -> list[str]:
        """Validate configuration values and return any warnings."""
        warnings = []

        if cls.THREADS is not None and cls.THREADS < 1:
            warnings.append("Thread count cannot be less than 1")
        elif cls.THREADS is not None and cls.THREADS > 64:
            warnings.append(f"Thread count ({cls.THREADS}) may be excessive")

        if cls.CACHE_MAX_SIZE < 16:
            warnings.append(
                f"Cache size ({cls.CACHE_MAX_SIZE}) is very small, consider increasing"
            )

        if cls.QUAD_MAX_LEVELS < 3:
            warnings.append(
                f"Quadrature depth ({cls.QUAD_MAX_LEVELS}) is below the minimum of 3"
            )
        elif cls.QUAD_MAX_LEVELS > 16:
            warnings.append(
                f"Quadrature depth ({cls.QUAD_MAX_LEVELS}) is very deep and slow"
            )

        if cls.QUAD_ABS_TOL <= 0 or cls.QUAD_REL_TOL <= 0:
            warnings.append("Quadrature tolerances must be positive")
        elif cls.QUAD_REL_TOL < 1e-15:
            warnings.append(
                f"Quadrature rel_tol ({cls.QUAD_REL_TOL}) is below double precision"
            )

        if cls.DIVERGENCE_CAP <= 0:
            warnings.append("Divergence cap must be positive")

        if cls.SOLVER_MAX_ITER < 100:
            warnings.append(
                f"Solver iteration cap ({cls.SOLVER_MAX_ITER}) is very small"
            )

        if cls.SOLVER_GRAD_TOL <= 0:
            warnings.append("Solver gradient tolerance must be positive")
        elif cls.SOLVER_GRAD_TOL > 1e-4:
            warnings.append(
                f"Solver gradient tolerance ({cls.SOLVER_GRAD_TOL}) is very loose"
            )

        return warnings


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings of the double-exponential quadrature engine."""

    max_levels: int = 12
    abs_tol: float = 1e-12
    rel_tol: float = 1e-11
    divergence_cap: float = 1e12

    def __post_init__(self):
        if self.max_levels < 3:
            raise ParameterDomainError(f"max_levels must be >= 3, got {self.max_levels}")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ParameterDomainError("quadrature tolerances must be positive")
        if self.divergence_cap <= 0:
            raise ParameterDomainError("divergence_cap must be positive")


@dataclass(frozen=True)
class SolverSettings:
    """Settings of the nonlinear conjugate gradient eigenvalue solver."""

    max_iter: int = 20000
    grad_tol: float = 1e-8
    armijo_c: float = 1e-4
    max_backtracks: int = 60
    restart_every: Optional[int] = None  # None = n // 2
    stall_window: int = 200
    stall_rel: float = 1e-10
    starts: Tuple[str, ...] = ("even", "odd", "even_random", "odd_random")
    noise: float = 0.1
    seed: int = 0
    tie_tol: float = 1e-10

    def __post_init__(self):
        if self.max_iter < 1:
            raise ParameterDomainError("max_iter must be positive")
        if self.grad_tol <= 0:
            raise ParameterDomainError("grad_tol must be positive")
        if not 0 < self.armijo_c < 1:
            raise ParameterDomainError("armijo_c must lie in (0, 1)")
        if not self.starts:
            raise ParameterDomainError("at least one start is required")


@dataclass
class BatchConfig:
    """Configuration for batch evaluation."""

    parallel_workers: Optional[int] = None
    max_batch_size: int = 100000
    timeout_seconds: Optional[float] = None


@dataclass
class CacheConfig:
    """Memo table configuration."""

    max_size: int = 4096


class ConfigManager:
    """Builds the typed configs from the environment and JSON files."""

    def get_quadrature_config(self) -> QuadratureConfig:
        """Get quadrature configuration."""
        return QuadratureConfig(
            max_levels=Config.QUAD_MAX_LEVELS,
            abs_tol=Config.QUAD_ABS_TOL,
            rel_tol=Config.QUAD_REL_TOL,
            divergence_cap=Config.DIVERGENCE_CAP,
        )

    def get_solver_settings(self) -> SolverSettings:
        """Get solver configuration."""
        return SolverSettings(
            max_iter=Config.SOLVER_MAX_ITER,
            grad_tol=Config.SOLVER_GRAD_TOL,
            seed=Config.SEED,
        )

    def get_batch_config(self) -> BatchConfig:
        """Get batch processing configuration."""
        return BatchConfig(parallel_workers=Config.THREADS)

    def get_cache_config(self) -> CacheConfig:
        """Get cache configuration."""
        return CacheConfig(max_size=Config.CACHE_MAX_SIZE)

    def load_config_file(self, config_path: Path) -> Dict[str, Any]:
        """Load configuration from JSON file."""
        if config_path.exists():
            with open(config_path, "r", encoding="utf-8") as f:
                return json.load(f)
        return {}

    def save_config_file(self, config: Dict[str, Any], config_path: Path) -> None:
        """Save configuration to JSON file."""
        config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(config_path, "w", encoding="utf-8") as f:
            json.dump(config, f, indent=2)


class Command(str, Enum):
    GTRIG = "gtrig"
    HFUN = "hfun"
    LAMBDA = "lambda"
    SATURATE = "saturate"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Validated settings of one CLI run.

    Values come from an optional JSON file; explicit flags override them
    (see ``from_sources``).
    """

    model_config = ConfigDict(extra="forbid")

    command: Command = Command.VERIFY
    p: float = Field(2.0, gt=1)
    q: float = Field(2.0, gt=1)
    r: float = Field(2.0, gt=1)
    alpha: float = 0.0
    n: int = Field(512, ge=16)
    alpha_min: float = 0.0
    alpha_max: float = 10.0
    steps: int = Field(6, ge=1)
    tol_alpha: float = Field(1e-3, gt=0)
    grad_tol: float = Field(default_factory=lambda: Config.SOLVER_GRAD_TOL, gt=0)
    max_iter: int = Field(default_factory=lambda: Config.SOLVER_MAX_ITER, ge=1)
    quad_abs_tol: float = Field(default_factory=lambda: Config.QUAD_ABS_TOL, gt=0)
    quad_rel_tol: float = Field(default_factory=lambda: Config.QUAD_REL_TOL, gt=0)
    quad_max_levels: int = Field(
        default_factory=lambda: Config.QUAD_MAX_LEVELS, ge=3
    )
    seed: int = Field(default_factory=lambda: Config.SEED)
    threads: Optional[int] = Field(default_factory=lambda: Config.THREADS, ge=1)
    quick: bool = False
    output: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSON

    @field_validator("n")
    @classmethod
    def _n_even(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"n must be even, got {value}")
        return value

    @model_validator(mode="after")
    def _alpha_range(self) -> "RunConfig":
        if self.alpha_max < self.alpha_min:
            raise ValueError("alpha_max must not be below alpha_min")
        return self

    @classmethod
    def from_sources(
        cls, config_file: Optional[Path] = None, **overrides: Any
    ) -> "RunConfig":
        """Merge a JSON config file with flag values; flags win, None is unset."""
        data: Dict[str, Any] = {}
        if config_file is not None:
            if not config_file.exists():
                raise FileNotFoundError(f"config file not found: {config_file}")
            data.update(config_manager.load_config_file(config_file))
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)

    def params(self):
        from .gtrig import Params

        return Params(self.p, self.q, self.r)

    def quadrature_config(self) -> QuadratureConfig:
        return QuadratureConfig(
            max_levels=self.quad_max_levels,
            abs_tol=self.quad_abs_tol,
            rel_tol=self.quad_rel_tol,
            divergence_cap=Config.DIVERGENCE_CAP,
        )

    def solver_settings(self) -> SolverSettings:
        return SolverSettings(
            max_iter=self.max_iter, grad_tol=self.grad_tol, seed=self.seed
        )

    def batch_config(self) -> BatchConfig:
        return BatchConfig(parallel_workers=self.threads)


# Global configuration manager instance
config_manager = ConfigManager()
