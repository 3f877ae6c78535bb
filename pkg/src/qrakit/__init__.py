"""Finite quasi relation algebras, nested sums and relational representations."""

__version__ = "0.1.0"
