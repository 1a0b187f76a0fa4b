"""Family complexity and cross-correlation measures for binary sequence families."""

__version__ = "0.1.0"
