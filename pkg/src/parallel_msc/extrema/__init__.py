"""Saddle-extremum arcs and extrema segmentation by root finding in merge-only path forests."""
from .arcs import *
from .forest import *

__all__ = arcs.__all__ + forest.__all__
