"""Thompson's groups F and T, the planar graphs of their tree pairs, and links."""

__version__ = "0.1.0"
