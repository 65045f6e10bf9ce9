"""A Hilbert-style first-order proof workbench for two arithmetic axiomatizations."""

__version__ = "0.1.0"
