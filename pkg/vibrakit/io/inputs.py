# vibrakit/io/inputs.py
"""Readers for the small tabular and YAML inputs the commands consume."""

from pathlib import Path
from typing import FrozenSet, List, Optional, Tuple

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError

from ..analysis.bolts import StackUp, load_annotations
from ..core.model.deck import read_group_cards
from ..core.model.types import BoltGroupDef, Model
from ..errors import InputError
from ..vibration.psd import PsdCurve, PsdProfile


def _read_text(path: Path, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {what} {path}: {e}") from e


def _two_columns(path: Path) -> Tuple[np.ndarray, np.ndarray]:
    """(frequency, PSD) columns of a comma-separated file; '#' starts a comment"""
    text = _read_text(path, "PSD file")
    try:
        data = np.loadtxt(text.splitlines(), delimiter=",", comments="#", ndmin=2, dtype=float)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from e
    if data.size == 0:
        raise InputError(f"{path}: no data rows")
    if data.shape[1] != 2:
        raise InputError(
            f"{path}: expected 2 columns (frequency Hz, PSD G²/Hz), got {data.shape[1]}"
        )
    return data[:, 0], data[:, 1]


def load_psd_profile(path: Path) -> PsdProfile:
    f, p = _two_columns(path)
    return PsdProfile(tuple(float(v) for v in f), tuple(float(v) for v in p))


def load_psd_curve(path: Path, label: str = "") -> PsdCurve:
    f, p = _two_columns(path)
    return PsdCurve(label or Path(path).stem, f, p)


def load_groups_file(path: Path, model: Optional[Model] = None) -> List[BoltGroupDef]:
    return read_group_cards(_read_text(path, "groups file"), model)


def load_annotations_file(path: Path) -> FrozenSet[Tuple[str, str]]:
    return load_annotations(_read_text(path, "annotations file"))


class StackUpFile(BaseModel):
    """Top-level layout of a stack-up YAML file"""

    positions: List[StackUp] = Field(min_length=1)


def load_stackups(path: Path) -> List[StackUp]:
    text = _read_text(path, "stack-up file")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InputError(f"{path}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a mapping with a 'positions' list")
    try:
        return StackUpFile(**data).positions
    except ValidationError as e:
        raise InputError(f"{path}: invalid stack-up: {e}") from e
