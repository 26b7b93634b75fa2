"""Exact and Monte-Carlo computations on wreath products G~S(n)."""

__version__ = "0.1.0"
