"""Data-parallel building blocks shared by the pipeline stages."""
from .parallel import *
from .scan import *

__all__ = parallel.__all__ + scan.__all__
