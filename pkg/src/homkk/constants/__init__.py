"""Constants for homkk.

This package contains the enums naming run profiles and the keys of the JSON
profile documents.
"""
