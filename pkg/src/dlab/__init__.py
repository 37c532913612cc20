"""Exact tools for the chromatic number of disjointness graphs of planar point sets."""

__version__ = "0.1.0"
