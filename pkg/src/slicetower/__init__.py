"""Computational tools for the slice spectral sequence of MU^((G)) over cyclic 2-groups."""

__version__ = "0.1.0"
