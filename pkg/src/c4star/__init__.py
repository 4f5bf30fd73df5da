"""Bounds and certificates for the Ramsey numbers f(n) = R(C4, K_{1,n})."""

__version__ = "0.1.0"
