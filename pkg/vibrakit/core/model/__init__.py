# vibrakit/core/model/__init__.py
"""Model types, deck reader/writer, validation and templates"""

from .deck import canonical_deck, load_deck, parse_deck, read_group_cards, serialize_deck
from .types import (
    DOF_NAMES,
    G0,
    BeamElement,
    BeamSection,
    BoltGroupDef,
    ConstraintSet,
    LoadCase,
    Material,
    Model,
    Node,
    PanelEquivalent,
    PointMass,
    Preload,
    ResolvedConstraint,
    RigidLink,
    ShellElement,
    SpcEntry,
    Units,
    format_dof_mask,
    parse_dof_mask,
)
from .validation import Finding, ValidationReport, validate_model

__all__ = [
    'DOF_NAMES',
    'G0',
    'BeamElement',
    'BeamSection',
    'BoltGroupDef',
    'ConstraintSet',
    'Finding',
    'LoadCase',
    'Material',
    'Model',
    'Node',
    'PanelEquivalent',
    'PointMass',
    'Preload',
    'ResolvedConstraint',
    'RigidLink',
    'ShellElement',
    'SpcEntry',
    'Units',
    'ValidationReport',
    'canonical_deck',
    'format_dof_mask',
    'load_deck',
    'parse_deck',
    'parse_dof_mask',
    'read_group_cards',
    'serialize_deck',
    'validate_model',
]
