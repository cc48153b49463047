"""Inverse sequences of abelian groups, simplicial homology of limits, solenoids and completions of Z^d."""

__version__ = "0.1.0"
