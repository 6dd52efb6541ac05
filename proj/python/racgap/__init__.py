"""Simulation and certification toolkit for the 2->1 random access code.

The heavy lifting lives in the ``_core`` extension module; this package
re-exports its public surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
