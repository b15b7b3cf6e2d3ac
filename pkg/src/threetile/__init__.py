"""Exact three-prototile encodings of Wang tile sets."""

__version__ = "0.1.0"
