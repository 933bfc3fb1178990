"""Exact computation in the ring of exponential polynomials over a number field."""
