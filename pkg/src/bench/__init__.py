"""
Synthetic data and benchmark harness for engine parity and scaling studies.
"""

from .harness import *
from .synth import *
