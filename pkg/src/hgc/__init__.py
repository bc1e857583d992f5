"""Exact finite-field hypergeometric sums and supercongruence verification."""

__version__ = "0.1.0"
