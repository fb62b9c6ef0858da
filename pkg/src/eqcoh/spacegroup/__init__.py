"""Extension cocycles of plane groups and their cohomology classes."""

from .cocycles import *  # noqa: F401,F403
from .cocycles import __all__  # noqa: F401
