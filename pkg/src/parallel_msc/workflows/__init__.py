"""The Morse-Smale complex: its data model, the pipeline computing it and its serialization."""
from .complex import *
from .pipeline import *
from .serialization import *

__all__ = complex.__all__ + pipeline.__all__ + serialization.__all__
