"""Spelling-variant synthesis for phonetically written languages."""

__version__ = "0.1.0"
