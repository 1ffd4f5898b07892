"""Quantitative recurrence toolkit for Bedford-McMullen carpets."""

__version__ = "0.1.0"
