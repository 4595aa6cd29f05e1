"""
Self-organizing map on a hexagonal lattice: geometry, sizing and the serial trainer.
"""

from .geometry import *
from .training import *
