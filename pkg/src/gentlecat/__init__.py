"""Gentle algebras, two-term complexes and the extriangulated categories built from them."""

__version__ = "0.1.0"
