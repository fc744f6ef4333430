"""Executable amenability theory for monomial algebras of subshifts."""

__version__ = "0.1.0"
