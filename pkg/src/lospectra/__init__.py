"""Exact spectral computations for the Jacobi operator of the Lawson-Osserman link."""

__version__ = "0.1.0"
