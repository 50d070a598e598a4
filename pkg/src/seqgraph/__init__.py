"""Turn sequences of distinct reals into 4-regular multigraphs and look for structure."""

__version__ = "0.1.0"
