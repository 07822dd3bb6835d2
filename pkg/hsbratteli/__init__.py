"""Exact computations on horizontally stationary generalized Bratteli diagrams."""

__version__ = "0.1.0"
