"""Exact computer algebra for the Heisenberg double of kappa-Poincare."""

__version__ = "0.1.0"
