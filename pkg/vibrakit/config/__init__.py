# vibrakit/config/__init__.py
"""Configuration management"""

from .settings import Config, RuntimeSettings, SolverOptions, Thresholds

__all__ = ['Config', 'RuntimeSettings', 'SolverOptions', 'Thresholds']
