"""Elkies/Atkin prime statistics, the SEA bound L_p, and quadratic character sums."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, ResourceError, __version__  # noqa: F401
