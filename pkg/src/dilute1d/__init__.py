"""Numerics for dilute one-dimensional spin-J Fermi gases."""
__version__ = "0.1.0"
