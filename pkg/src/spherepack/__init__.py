"""Exact lattice and sphere-packing computations.

Lattices are given Gram-first over Q(sqrt 2); enumeration is compiled with
numba and every float decision is re-checked in exact arithmetic.
"""
from .errors import (ConstructionError, PrecisionError, PreconditionError,
                     RepresentationError, ResourceError, SpherePackError,
                     ThetaSystemError)
from .lattice import (Lattice, PeriodicPacking, center_density, coordination_sequence,
                      density, determinant, dual, is_even, is_integral, is_unimodular,
                      kissing_number, min_norm, minimal_vectors, packing_invariants,
                      theta_series)
from .qseries import QSeries
from .scalar import Scalar

__version__ = "0.1.0"

__all__ = [
    "ConstructionError", "Lattice", "PeriodicPacking", "PrecisionError",
    "PreconditionError", "QSeries", "RepresentationError", "ResourceError", "Scalar",
    "SpherePackError", "ThetaSystemError", "center_density", "coordination_sequence",
    "density", "determinant", "dual", "is_even", "is_integral", "is_unimodular",
    "kissing_number", "min_norm", "minimal_vectors", "packing_invariants", "theta_series",
]
