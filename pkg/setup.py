# setup.py
# Shim for tools that still invoke setup.py directly; vibrakit is configured in pyproject.toml
from setuptools import setup

setup()
