"""Boundary limits and degenerate fibers of non-simple principally polarized abelian surfaces."""

from .siegel import DiscriminantVector, PeriodMatrix, enumerate_vectors, humbert_residual, sample_point

__version__ = "0.1.0"
