"""Exact-arithmetic toolkit for rank-4 complex reflection groups and the
K3 quotient surfaces built from their invariants."""

__version__ = "0.1.0"
