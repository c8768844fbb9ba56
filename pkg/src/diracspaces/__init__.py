"""Exact linear algebra for Dirac Manin triples, metrized linear groupoids and
the homogeneous spaces they classify."""
from .errors import *  # noqa: F401,F403
from .report import Check, ValidationReport

__all__ = ["Check", "ValidationReport"]
