"""Eigenvalue upper bounds on the size of error-correcting codes in
discrete metric spaces.

The pipeline: a metric space (city block, projective, phase-rotation,
block, cyclic b-burst, Varshamov) yields its distance graph (edges at
distance exactly 1); codes of minimum distance d correspond to
(d-1)-independent sets of that graph; the Inertia-type and Ratio-type
eigenvalue bounds (with optimal-polynomial MILP/LP searches) bound the
k-independence number from the spectrum, and an exact branch-and-bound
oracle computes it outright at desk scale.
"""

from .algebra import FieldVector, FiniteField, Polynomial, make_field
from .graphs import Graph, build_distance_graph, k_independence_number
from .spectra import Spectrum
from .spectral_bounds import BoundReport

__all__ = [
    "FieldVector", "FiniteField", "Polynomial", "make_field",
    "Graph", "build_distance_graph", "k_independence_number",
    "Spectrum", "BoundReport",
]

__version__ = "0.1.0"
