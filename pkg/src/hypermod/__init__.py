"""Exact verification of hypergeometric modular equations and their Ramanujan-type 1/pi series."""

__version__ = "0.1.0"
