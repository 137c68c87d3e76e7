"""Exact engine for the Laguerre and Meixner symmetric-function families and
the associated Markov jump dynamics on Young diagrams."""

from . import coeffring, laguerre, meixner, nvariate, partition, symcore, zdynamics
from .coeffring import MPoly, NumericParams, Rat
from .symcore import SymFunc, ThomaPoint

__all__ = [
    "MPoly",
    "NumericParams",
    "Rat",
    "SymFunc",
    "ThomaPoint",
    "coeffring",
    "laguerre",
    "meixner",
    "nvariate",
    "partition",
    "symcore",
    "zdynamics",
]

__version__ = "0.1.0"
