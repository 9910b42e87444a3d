"""Cubical cell complex of a regular 3D grid and scalar fields sampled on its vertices."""
from .cells import AXES, CellId, GridDims
from .field import ScalarField, compare_cells

__all__ = ('AXES', 'CellId', 'GridDims', 'ScalarField', 'compare_cells')
