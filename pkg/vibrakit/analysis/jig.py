# vibrakit/analysis/jig.py
"""Test-jig studies: fixture frequency with the article mass, separation, handling mass."""

from dataclasses import dataclass
from typing import Optional, Union

from ..core.model.types import ConstraintSet, Model
from ..errors import InputError
from ..fea.shell import DEFAULT_DRILLING_FACTOR
from ..utils.logging import get_logger
from .modal import (
    AXES,
    ModalResult,
    ModeRecord,
    SeparationCheck,
    frequency_separation,
    normal_modes,
)

logger = get_logger('analysis.jig')


@dataclass(frozen=True)
class HandlingCheck:
    mass: float
    limit: float

    @property
    def passed(self) -> bool:
        return self.mass <= self.limit


@dataclass(frozen=True)
class JigStudy:
    constraint: str
    modal: ModalResult
    governing_mode: ModeRecord
    axis: str
    separation: SeparationCheck
    handling: HandlingCheck

    @property
    def first_frequency(self) -> float:
        return self.modal.first_frequency

    @property
    def passed(self) -> bool:
        return self.separation.passed and self.handling.passed


def structural_mass(model: Model, exclude_point_masses: bool = True) -> float:
    """Element mass, optionally with the point masses (test article stand-ins)"""
    return model.structural_mass() if exclude_point_masses else model.total_mass()


def handling_mass_check(model: Model, limit_kg: float = 22.5) -> HandlingCheck:
    """One-person handling rule on the fixture's own mass"""
    if limit_kg <= 0:
        raise InputError(f"handling mass limit must be positive, got {limit_kg}")
    return HandlingCheck(mass=structural_mass(model), limit=limit_kg)


def jig_study(
    model: Model,
    constraint: Union[ConstraintSet, str],
    f_article: float,
    axis: str = "Z",
    n_modes: Optional[int] = 10,
    min_ratio: float = 2.0,
    handling_limit_kg: float = 22.5,
    drilling_factor: float = DEFAULT_DRILLING_FACTOR,
) -> JigStudy:
    """f1 of jig + article mass, the mode mobilizing the most mass along `axis`,
    separation from the article's f1 and the handling-mass rule"""
    axis = axis.upper()
    if axis not in AXES:
        raise InputError(f"axis must be one of {', '.join(AXES)}, got '{axis}'")
    modal = normal_modes(model, constraint, n_modes=n_modes, drilling_factor=drilling_factor)
    k = AXES.index(axis)
    governing = max(modal.modes, key=lambda m: (m.effective_mass[k], -m.index))
    separation = frequency_separation(f_article, modal.first_frequency, min_ratio)
    handling = handling_mass_check(model, handling_limit_kg)
    logger.info(
        f"Jig study '{modal.constraint}': f1 = {modal.first_frequency:.1f} Hz, "
        f"{axis} mode {governing.index} at {governing.frequency:.1f} Hz "
        f"({governing.effective_mass[k]:.2f} kg), ratio {separation.ratio:.2f}"
    )
    return JigStudy(
        constraint=modal.constraint,
        modal=modal,
        governing_mode=governing,
        axis=axis,
        separation=separation,
        handling=handling,
    )
