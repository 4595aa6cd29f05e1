"""
Data-parallel SOM training over partitioned map units.
"""

from .engine import *
