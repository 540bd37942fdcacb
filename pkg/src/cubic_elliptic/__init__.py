"""Exact computations for cubic elliptic varieties: cones, Cox rings, classification."""

__version__ = "0.1.0"
