"""Module with basic type definitions."""
from enum import Enum, IntEnum

import numpy

__all__ = (
    'CountingMethod',
    'EdgeType',
    'ExitCode',
    'FieldKind',
    'OutputFormat',
    'ScalarDtype',
    'SuccessorKind',
)


class ScalarDtype(Enum):
    """Enumeration of scalar sample types accepted for raw volumes."""

    U8 = 'u8'
    U16 = 'u16'
    F32 = 'f32'
    F64 = 'f64'

    def numpy_dtype(self, big_endian: bool = False) -> numpy.dtype:
        """Return the numpy dtype with the requested byte order."""
        dtype = numpy.dtype({'u8': 'u1', 'u16': 'u2', 'f32': 'f4', 'f64': 'f8'}[self.value])
        return dtype.newbyteorder('>' if big_endian else '<')

    @property
    def itemsize(self) -> int:
        """Return the number of bytes per sample."""
        return self.numpy_dtype().itemsize


class OutputFormat(Enum):
    """Enumeration of document formats for a serialized complex."""

    JSON = 'json'
    CSV = 'csv'


class FieldKind(Enum):
    """Enumeration of synthetic scalar fields."""

    RAMP = 'ramp'
    TWO_BUMPS = 'two-bumps'
    RANDOM_SMOOTH = 'random-smooth'
    WHITE_NOISE = 'white-noise'


class CountingMethod(Enum):
    """Enumeration of strategies to count 1-saddle to 2-saddle gradient paths."""

    MATRIX = 'matrix'
    TRAVERSAL = 'traversal'


class SuccessorKind(Enum):
    """Enumeration of the node kinds a 1-cell can step to in the saddle connection graph."""

    EDGE = 'edge'
    TERMINAL_2SADDLE = 'terminal_2saddle'


class EdgeType(Enum):
    """Enumeration of the edge types of the contracted saddle connection graph."""

    ONE_SADDLE_JUNCTION = '1s-j'
    JUNCTION_JUNCTION = 'j-j'
    JUNCTION_TWO_SADDLE = 'j-2s'
    ONE_SADDLE_TWO_SADDLE = '1s-2s'


class ExitCode(IntEnum):
    """Exit codes of the command line interface."""

    OK = 0
    USAGE = 1
    IO = 2
    VALIDATION = 3
    OVERFLOW = 4
