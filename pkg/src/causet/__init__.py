"""Causal sets sprinkled into 1+1 Minkowski space, with world-line sums and
numerical checks of special-relativistic and Schwartz-space formulas."""

__version__ = "0.1.0"
