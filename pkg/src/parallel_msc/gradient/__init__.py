"""Discrete gradient fields: construction from scalar fields, critical cells and consistency checks."""
from .codes import *
from .critical import *
from .lower_star import *
from .validation import *

__all__ = codes.__all__ + critical.__all__ + lower_star.__all__ + validation.__all__
