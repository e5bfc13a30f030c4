# vibrakit/__init__.py
"""
vibrakit - structural verification toolkit for small satellites.

Simplified finite-element modeling, normal-mode and static-load analysis with
margins of safety, bolt-group shear extraction and random-vibration metrics.
"""

__version__ = "0.1.0"
