"""Exact construction and verification of dynamical Yang-Baxter structures
(intertwiners, fusion and exchange matrices, difference operators and
weighted traces) for type-A Lie algebras at q = 1."""

__version__ = "0.1.0"
