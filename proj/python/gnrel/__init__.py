"""Goodman-Nguyen comparisons, coherence checks and extensions with exact rationals."""

from ._gnrel import *  # noqa: F401,F403
from ._gnrel import __doc__, __version__  # noqa: F401
