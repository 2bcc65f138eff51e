"""Two-step sequential hybrid beamforming link-level simulator."""

from ._mmbeam import *  # noqa: F401,F403
from ._mmbeam import __version__  # noqa: F401
