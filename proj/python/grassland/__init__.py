"""UAV grassland restoration solvers (C++ core)."""

from ._grassland import *  # noqa: F401,F403
from ._grassland import __doc__  # noqa: F401

__version__ = "0.1.0"
