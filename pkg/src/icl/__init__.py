"""Local-coloring bounds and linear index codes for side-information digraphs."""

__version__ = "0.1.0"
