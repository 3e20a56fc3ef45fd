"""Exact computations with gravity chord diagrams and the moduli spaces of genus-zero curves."""

__version__ = "0.1.0"
