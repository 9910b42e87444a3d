"""Module with utilities to define named presets of computation options."""
from .registry import ProtocolRegistry

__all__ = ('ProtocolRegistry',)
