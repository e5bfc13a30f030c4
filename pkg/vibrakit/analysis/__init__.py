# vibrakit/analysis/__init__.py
"""Modal, static, jig and bolt analyses built on the FE kernel"""

from .bolts import (
    BoltGroupReport,
    BoltShearRecord,
    GroupShear,
    StackItem,
    StackUp,
    StackUpResult,
    bolt_shear_records,
    group_max_shear,
    load_annotations,
    miles_scaled_case,
    rank_loosening_risk,
    records_to_punch,
    srss_shear,
    stackup_check,
)
from .jig import HandlingCheck, JigStudy, handling_mass_check, jig_study, structural_mass
from .modal import (
    ModalResult,
    ModeRecord,
    RequirementCheck,
    SeparationCheck,
    check_min_frequency,
    classify_mode,
    compare_conditions,
    effective_mass,
    filter_modes,
    frequency_separation,
    normal_modes,
)
from .static import (
    MarginResult,
    RatioCheck,
    SafetyFactors,
    StaticResult,
    margin_of_safety,
    max_von_mises,
    run_static_case,
    run_static_cases,
    stress_ratio_check,
)

__all__ = [
    'BoltGroupReport',
    'BoltShearRecord',
    'GroupShear',
    'HandlingCheck',
    'JigStudy',
    'MarginResult',
    'ModalResult',
    'ModeRecord',
    'RatioCheck',
    'RequirementCheck',
    'SafetyFactors',
    'SeparationCheck',
    'StackItem',
    'StackUp',
    'StackUpResult',
    'StaticResult',
    'bolt_shear_records',
    'check_min_frequency',
    'classify_mode',
    'compare_conditions',
    'effective_mass',
    'filter_modes',
    'frequency_separation',
    'group_max_shear',
    'handling_mass_check',
    'jig_study',
    'load_annotations',
    'margin_of_safety',
    'max_von_mises',
    'miles_scaled_case',
    'normal_modes',
    'rank_loosening_risk',
    'records_to_punch',
    'run_static_case',
    'run_static_cases',
    'srss_shear',
    'stackup_check',
    'structural_mass',
]
