"""Exact commutative algebra over prime fields and the rationals."""
