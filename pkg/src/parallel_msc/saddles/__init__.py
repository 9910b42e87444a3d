"""Saddle connections: the saddle DAG, its contracted minor and the counting of gradient paths through it."""
from .counting import *
from .graph import *
from .matrix import *
from .minor import *

__all__ = counting.__all__ + graph.__all__ + matrix.__all__ + minor.__all__
