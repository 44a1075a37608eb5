"""Integral Chow rings of toric stacks from stacky fans."""

__version__ = "0.1.0"
