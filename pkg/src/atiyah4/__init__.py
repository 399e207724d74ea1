"""Exact verification toolkit for the 4-point Atiyah determinant.

The package re-derives, in exact rational arithmetic, the polynomial
identities and positivity certificates that prove the three
Atiyah-Sutcliffe conjectures for four points, reproduces the associated
linear programs with an exact simplex solver, and cross-validates the
symbolic results against a floating-point implementation of the
determinant itself.
"""

from __future__ import annotations

__version__ = "0.1.0"

from . import atiyah, catalog, certify, lp, polyring, symmetry  # noqa: F401
from .polyring import Poly  # noqa: F401
