# vibrakit/core/panels.py
"""
Panel simplification: dummy density for a uniform skin carrying the real
panel + component mass, and thickness matching against a target f1.
"""

import math
from typing import Optional, Tuple

from ..errors import BracketError, ConvergenceError, InputError
from ..utils.logging import get_logger
from .model.types import Model, PanelEquivalent

logger = get_logger('core.panels')


def equivalent_density(total_mass: float, volume: float) -> float:
    """Density (kg/m³) that gives `volume` the mass `total_mass`"""
    if not (total_mass > 0 and volume > 0) or not math.isfinite(total_mass / volume):
        raise InputError(f"mass and volume must be positive (got {total_mass}, {volume})")
    return total_mass / volume


def panel_equivalent(
    real_mass: float, component_mass: float, area: float, thickness: float
) -> PanelEquivalent:
    """Simplified-panel record for a real panel and the components mounted on it"""
    if real_mass <= 0 or component_mass < 0 or area <= 0 or thickness <= 0:
        raise InputError(
            "panel inputs must be positive (component mass may be zero): "
            f"real={real_mass}, component={component_mass}, area={area}, thickness={thickness}"
        )
    density = equivalent_density(real_mass + component_mass, area * thickness)
    return PanelEquivalent(
        real_mass=real_mass,
        component_mass=component_mass,
        area=area,
        thickness=thickness,
        density=density,
    )


def shell_mass_and_area(model: Model) -> Tuple[float, float]:
    area = sum(model.shell_area(s) for s in model.shells)
    mass = sum(
        model.material(s.material).rho * s.thickness * model.shell_area(s) for s in model.shells
    )
    return mass, area


def panel_first_frequency(
    template: Model,
    thickness: float,
    constraint: Optional[str] = None,
    shell_mass: Optional[float] = None,
) -> float:
    """f1 of the template at `thickness`, shell mass held at `shell_mass`"""
    from ..fea.assembly import assemble
    from ..fea.solvers import solve_modes

    if shell_mass is None:
        shell_mass, _ = shell_mass_and_area(template)
    _, area = shell_mass_and_area(template)
    density = equivalent_density(shell_mass, area * thickness)
    model = template.with_shell_thickness(thickness, density=density)
    name = constraint or template.constraints[0].name
    solution = solve_modes(assemble(model, name), 1)
    return float(solution.frequencies[0])


def match_equivalent_thickness(
    target_f1: float,
    template: Model,
    bounds: Tuple[float, float],
    tolerance: float,
    constraint: Optional[str] = None,
    max_iter: int = 60,
) -> float:
    """Bisection on skin thickness until f1 is within `tolerance` Hz of the target

    The template's shell mass is held constant by re-deriving the density at
    every trial thickness.
    """
    lower, upper = bounds
    if not 0 < lower < upper:
        raise InputError(f"thickness bounds must satisfy 0 < lower < upper, got {bounds}")
    if tolerance <= 0 or target_f1 <= 0:
        raise InputError("target frequency and tolerance must be positive")
    if not template.shells:
        raise InputError("template has no shell elements")

    shell_mass, _ = shell_mass_and_area(template)
    f_lo = panel_first_frequency(template, lower, constraint, shell_mass)
    f_hi = panel_first_frequency(template, upper, constraint, shell_mass)
    logger.debug(f"Thickness bracket: f1({lower}) = {f_lo:.4f} Hz, f1({upper}) = {f_hi:.4f} Hz")
    if abs(f_lo - target_f1) <= tolerance:
        return lower
    if abs(f_hi - target_f1) <= tolerance:
        return upper
    if not f_lo < target_f1 < f_hi:
        raise BracketError(
            f"target f1 {target_f1:.4f} Hz is not bracketed by "
            f"f1({lower:.6g} m) = {f_lo:.4f} Hz and f1({upper:.6g} m) = {f_hi:.4f} Hz"
        )

    for iteration in range(1, max_iter + 1):
        mid = 0.5 * (lower + upper)
        f_mid = panel_first_frequency(template, mid, constraint, shell_mass)
        if abs(f_mid - target_f1) <= tolerance:
            logger.info(f"Matched thickness {mid:.6g} m (f1 = {f_mid:.4f} Hz) in {iteration} steps")
            return mid
        if f_mid < target_f1:
            lower = mid
        else:
            upper = mid
    raise ConvergenceError(
        f"thickness search did not reach {tolerance} Hz within {max_iter} iterations"
    )
