# vibrakit/cli/__init__.py
"""CLI interface for vibrakit"""

from .main import app, main

__all__ = ['app', 'main']
