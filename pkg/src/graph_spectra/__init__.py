"""Spectral analysis of adjacency operators of graphs with tails: canonical
forms (finite component plus Jacobi components), the Schur-complement main
equation, periodic band structure, sparse families and finite sections."""
from .graph import (InfiniteGraphSpec, TailSpec, WeightedGraph, build_complete, build_cycle,
                    build_flower, build_from_edges, build_path, build_star, load_spec)
from .jacobi import FiniteRankJacobi, discrete_spectrum, jost_polynomial, spectral_measure
from .periodic import PeriodicJacobi, essential_bands, gap_eigenvalues
from .reduction import CanonicalForm, multi_ray_attach, rays_at_every_vertex, reduce_single_tail, spectrum_of_canonical
from .schur import schur_discrete_spectrum
from .solve import canonical_spectrum, schur_spectrum
from .spectrum import Spectrum

__version__ = "0.1.0"
