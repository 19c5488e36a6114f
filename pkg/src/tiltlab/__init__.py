"""Exact homological algebra for cluster-tilted and Calabi-Yau algebras."""

__version__ = "0.1.0"
