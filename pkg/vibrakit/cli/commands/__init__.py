# vibrakit/cli/commands/__init__.py
"""CLI command modules"""
