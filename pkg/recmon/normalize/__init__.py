"""Normalization package: slim formulas, recursion removal and tightness."""
