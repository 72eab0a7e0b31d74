"""Exact counting and verification for lozenge tilings of hexagons with
three collinear ferns removed."""

__version__ = "0.1.0"
