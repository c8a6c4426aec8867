"""Exact invariants of nonnormal surface germs with class-qG singularities."""

__version__ = "0.1.0"
