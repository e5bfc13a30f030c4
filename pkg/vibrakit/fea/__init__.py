# vibrakit/fea/__init__.py
"""Finite-element kernel: element matrices, assembly, solvers, recovery"""

from .assembly import AssembledSystem, DofMap, assemble
from .beam import beam_matrices
from .recovery import (
    BeamEndForces,
    EndForces,
    ShellStress,
    SurfaceStress,
    beam_fiber_stress,
    recover_beam_end_forces,
    recover_shell_stress,
)
from .shell import shell_matrices
from .solvers import DisplacementField, ModalSolution, solve_modes, solve_static

__all__ = [
    'AssembledSystem',
    'BeamEndForces',
    'DisplacementField',
    'DofMap',
    'EndForces',
    'ModalSolution',
    'ShellStress',
    'SurfaceStress',
    'assemble',
    'beam_fiber_stress',
    'beam_matrices',
    'recover_beam_end_forces',
    'recover_shell_stress',
    'shell_matrices',
    'solve_modes',
    'solve_static',
]
