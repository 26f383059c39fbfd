"""Online Ramsey game for the triangle on restricted host classes."""

__version__ = "0.1.0"
