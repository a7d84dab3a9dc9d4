"""Randomized tensor ring decomposition: sketched alternating least squares."""

__version__ = "0.1.0"
