"""segalkit: finite-scale internal category theory with brute-force
universal-property certification."""

__version__ = "0.1.0"
