"""Bounds and Monte Carlo verification tools for restricted isometry
constants of random matrices."""

from ._ripbound import *  # noqa: F401,F403
from ._ripbound import __version__  # noqa: F401
