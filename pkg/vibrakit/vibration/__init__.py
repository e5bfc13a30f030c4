# vibrakit/vibration/__init__.py
"""Random-vibration spectra and test-evaluation metrics"""

from .psd import (
    MagnificationResult,
    MagnificationRow,
    PsdCurve,
    PsdProfile,
    find_peak,
    grms,
    magnification_row,
    miles_acceleration,
    psd_at,
    response_magnification,
    scale_to_grms,
    sdof_transmissibility,
    slope_db_per_octave,
    three_sigma,
)

__all__ = [
    'MagnificationResult',
    'MagnificationRow',
    'PsdCurve',
    'PsdProfile',
    'find_peak',
    'grms',
    'magnification_row',
    'miles_acceleration',
    'psd_at',
    'response_magnification',
    'scale_to_grms',
    'sdof_transmissibility',
    'slope_db_per_octave',
    'three_sigma',
]
