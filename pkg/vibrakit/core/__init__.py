# vibrakit/core/__init__.py
"""Core model layer"""
