"""Source root for the homkk engine.

The importable package lives in :mod:`homkk`.
"""
