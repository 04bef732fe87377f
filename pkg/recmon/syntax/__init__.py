"""Syntax package: alphabets, syntax trees, parsing and printing."""
