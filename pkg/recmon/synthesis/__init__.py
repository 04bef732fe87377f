"""Synthesis package: formulas to monitors and back."""
