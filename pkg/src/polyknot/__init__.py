"""Polynomial knots: exact embedding checks, coefficient-space paths and diagram invariants."""

__version__ = "0.1.0"
