"""Exact interval arithmetic on the Cantor set and its self-similar relatives."""

from .exact_arith import Interval, IntervalSet, normalize
from .cantor_core import CantorSpec, cantor_level, generate, in_cantor, upper_level
from .image_engine import set_image

__all__ = [
    "CantorSpec",
    "Interval",
    "IntervalSet",
    "cantor_level",
    "generate",
    "in_cantor",
    "normalize",
    "set_image",
    "upper_level",
]

__version__ = "0.1.0"
