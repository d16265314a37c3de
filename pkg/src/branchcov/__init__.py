"""Characteristic-class and determinant-line checks for branched coverings."""

__version__ = "0.1.0"
