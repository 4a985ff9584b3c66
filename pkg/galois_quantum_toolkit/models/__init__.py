"""
Models module - shared base model and serialization field types
"""

from .base import (
    Model as Model,
    ComplexValue as ComplexValue,
    ComplexArray as ComplexArray,
    IntArray as IntArray,
)
