"""Radii of convexity of normalized Jackson and Hahn-Exton q-Bessel functions."""

__version__ = "0.1.0"
