"""Test package for the homkk engine.

This package contains the test cases and the shared strategies and
factories used to exercise the linear algebra layer, the Z-action and
diagram classifiers and filtrated K-theory.
"""
