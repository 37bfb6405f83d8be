"""Spectral boundary-integral toolkit for the Helmholtz screen problem on open arcs."""

__version__ = "0.1.0"
