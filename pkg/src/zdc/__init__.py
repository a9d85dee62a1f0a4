"""Certified constants for an explicit log-free zero-density estimate for zeta."""

__version__ = "0.1.0"
