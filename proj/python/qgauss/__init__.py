"""Distributed Gaussian polynomials, q-oscillator eigenfunctions and their checks."""

from ._qgauss import *  # noqa: F401,F403
from ._qgauss import __doc__  # noqa: F401
