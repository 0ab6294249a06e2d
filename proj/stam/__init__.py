"""Discrete-modulation adiabatic protocol toolkit."""

from ._stam import *  # noqa: F401,F403
from ._stam import __version__  # noqa: F401
