"""Parallel computation of the combinatorial Morse-Smale complex of scalar fields on regular 3D grids."""
__version__ = '0.1.0'
