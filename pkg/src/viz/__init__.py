"""
Visualisation of trained maps: similarity colours, node labels and SVG rendering.
"""

from .colors import *
from .labels import *
from .svg import *
