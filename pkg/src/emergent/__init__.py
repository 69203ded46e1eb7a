"""Exact multiplicities for dice and Einstein solids, and a Monte Carlo
check that random microprocesses yield nearly deterministic macrostates."""

__version__ = "0.1.0"
