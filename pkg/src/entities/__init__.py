"""
Entities (models) for documents, matrices, maps, decorations and reports.
"""

from .base import *
from .bench import *
from .corpus import *
from .parallel import *
from .parameters import *
from .som import *
from .utils import *
from .viz import *
