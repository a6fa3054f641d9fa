"""Configuration package for homkk.

This package holds the environment settings (resource limits read through
pydantic-settings), the JSON run profiles and the logging setup used by the CLI.
"""
