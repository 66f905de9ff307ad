"""Exact factorizations of symmetric groups and Frobenius-Schur indicators of bismash products."""
from .perm import Permutation, compose, conjugate, involution_count
from .group import PermGroup, close

__version__ = "0.1.0"
