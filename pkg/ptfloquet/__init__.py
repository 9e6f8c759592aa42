"""Static and Floquet-driven PT-symmetric SSH lattices."""

__version__ = "0.1.0"
