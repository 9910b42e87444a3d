"""Module for resources common to the entire `parallel-msc` package."""
from .exceptions import *
from .types import *

__all__ = exceptions.__all__ + types.__all__
