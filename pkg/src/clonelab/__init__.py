"""Exact verification of clones, cartesian operads, and the endomorphism
clone of a noncommutative square-zero deformation of Z[sqrt(q)]."""

__version__ = "0.1.0"
