# vibrakit/cli/context.py

import functools
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import typer
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from rich.console import Console
from rich.markup import escape

from ..config import Config
from ..config.settings import SolverOptions, Thresholds
from ..core.model import Model, load_deck, validate_model
from ..errors import InputError, SolverError
from ..utils.logging import get_logger

logger = get_logger('cli.context')

EXIT_OK = 0
EXIT_REQUIREMENT = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3

# Reports go to stdout verbatim; status and errors go to stderr
report_console = Console(markup=False, highlight=False, emoji=False, soft_wrap=True)
err_console = Console(stderr=True, soft_wrap=True)


class OutputFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"


class RunConfig(BaseModel):
    """Everything one command run needs, checked before any analysis starts"""

    model_config = ConfigDict(frozen=True)

    deck: Optional[Path] = None
    constraints: List[str] = Field(default_factory=list)
    cases: List[str] = Field(default_factory=list)
    modes: Optional[int] = Field(default=10, ge=1)
    output_format: OutputFormat = OutputFormat.TEXT
    out: Optional[Path] = None
    inputs: Dict[str, Path] = Field(default_factory=dict)
    band: Optional[Tuple[float, float]] = None
    thresholds: Thresholds = Field(default_factory=Thresholds)
    solver: SolverOptions = Field(default_factory=SolverOptions)

    @field_validator('deck')
    @classmethod
    def _deck_exists(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not value.is_file():
            raise ValueError(f"deck not found: {value}")
        return value

    @field_validator('inputs')
    @classmethod
    def _inputs_exist(cls, value: Dict[str, Path]) -> Dict[str, Path]:
        for role, path in value.items():
            if not path.is_file():
                raise ValueError(f"{role} not found: {path}")
        return value

    @field_validator('band')
    @classmethod
    def _band_ordered(cls, value: Optional[Tuple[float, float]]) -> Optional[Tuple[float, float]]:
        if value is not None and not 0 < value[0] < value[1]:
            raise ValueError(f"band must satisfy 0 < low < high, got {value[0]}-{value[1]} Hz")
        return value

    @field_validator('out')
    @classmethod
    def _out_parent_exists(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not value.parent.is_dir():
            raise ValueError(f"output directory does not exist: {value.parent}")
        return value

    @property
    def fmt(self) -> str:
        return self.output_format.value


def _validation_message(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(p) for p in item.get('loc', ()))
        message = str(item.get('msg', '')).removeprefix("Value error, ")
        parts.append(f"{where}: {message}" if where else message)
    return "; ".join(parts)


class AnalysisContext:
    """Configuration, thresholds and model loading shared by every command"""

    def __init__(self, config_dir: Optional[Path] = None):
        self.config = Config(config_dir)

    def run_config(
        self,
        thresholds: Optional[Dict[str, Any]] = None,
        solver: Optional[Dict[str, Any]] = None,
        inputs: Optional[Dict[str, Optional[Path]]] = None,
        **fields: Any,
    ) -> RunConfig:
        """Merge flags over config.yaml and validate; non-None overrides win"""
        present = {role: path for role, path in (inputs or {}).items() if path is not None}
        try:
            return RunConfig(
                thresholds=self.config.thresholds(**(thresholds or {})),
                solver=self.config.solver_options(**(solver or {})),
                inputs=present,
                **fields,
            )
        except ValidationError as e:
            raise InputError(_validation_message(e)) from e

    def load_model(self, path: Path) -> Model:
        """Parse a deck and refuse it when validation reports errors"""
        model = load_deck(path)
        report = validate_model(model)
        for finding in report:
            if finding.severity != "error":
                logger.warning(str(finding))
        if not report.ok:
            details = "; ".join(str(f) for f in report.errors)
            raise InputError(f"{path}: {len(report.errors)} validation error(s): {details}")
        return model

    @property
    def max_dof(self) -> int:
        return self.config.max_dof

    def emit(self, run: RunConfig, text: str):
        """Write the report to --out or stdout"""
        if run.out is not None:
            run.out.write_text(text, encoding="utf-8")
            err_console.print(f"[green]✓[/green] Report written to {escape(str(run.out))}")
        else:
            report_console.print(text, end="")


def fail(message: str, code: int = EXIT_REQUIREMENT):
    """Print a failure line on stderr and leave with `code`"""
    err_console.print(f"[red]✗[/red] {escape(message)}")
    raise typer.Exit(code)


def handle_errors(func: Callable) -> Callable:
    """Map vibrakit errors to exit codes: input 2, solver 3"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InputError as e:
            logger.debug(f"{func.__name__} failed on input", exc_info=True)
            err_console.print(f"[red]✗[/red] Input error: {escape(str(e))}")
            raise typer.Exit(EXIT_INPUT)
        except SolverError as e:
            logger.debug(f"{func.__name__} failed in the solver", exc_info=True)
            err_console.print(f"[red]✗[/red] Solver error: {escape(str(e))}")
            raise typer.Exit(EXIT_SOLVER)

    return wrapper
