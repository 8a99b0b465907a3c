"""Twisting problems, nuclei and curve attractors for quadratic Thurston maps
with four postcritical points."""

__version__ = "0.1.0"
