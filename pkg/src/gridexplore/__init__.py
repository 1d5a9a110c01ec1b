"""Executable model of oblivious-robot grid exploration."""

__version__ = "0.1.0"
