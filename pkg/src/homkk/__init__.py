"""Exact integer engine for UCT obstruction classes.

The package decides KK-equivalence questions at the level of K-theoretic
invariants and computes obstruction classes in explicit cokernels:

- :mod:`homkk.linear` for presented Z/2-graded groups, Hom, Ext and the split UCT pair algebra,
- :mod:`homkk.laurent` for Z-actions,
- :mod:`homkk.diagrams` for diagrams over unique path spaces,
- :mod:`homkk.filtrated` for filtrated K-theory over totally ordered spaces.

Everything is reduced to Smith and Hermite normal forms over the integers.
"""

__version__ = "0.1.0"
