"""Exact Schur positivity and log-concavity checks for longest increasing subsequences."""

__version__ = "0.1.0"
