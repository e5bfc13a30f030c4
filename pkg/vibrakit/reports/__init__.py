# vibrakit/reports/__init__.py
"""Table-shaped text and CSV reports"""
