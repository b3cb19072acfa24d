"""Exact structure computations for Lie algebras, finite and graded."""

__version__ = "0.1.0"
