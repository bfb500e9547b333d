"""Distributed Nash-seeking testbed.

Hard quadratic game instances over noisy channels, information-theoretic
iteration lower bounds, and the simulation machinery to check measured
complexity against every bound. All information quantities are in nats.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
