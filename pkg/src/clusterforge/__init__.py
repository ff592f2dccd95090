"""Exact combinatorics of type A cluster variables parameterized by words."""

__version__ = "0.1.0"
