# vibrakit/io/__init__.py
"""Punch-format results and tabular input files"""
