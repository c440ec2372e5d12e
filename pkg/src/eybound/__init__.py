"""Vanishing bounds for powers of ideals of embedded varieties."""

__version__ = "0.1.0"
