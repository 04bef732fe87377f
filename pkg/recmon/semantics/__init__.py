"""Semantics package: ground-truth evaluation of formulas."""
