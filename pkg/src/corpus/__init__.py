"""
Functions for turning complaint texts into normalised document-term matrices.
"""

from .tokenize import *
from .vocabulary import *
from .weighting import *
