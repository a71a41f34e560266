"""Weighted simplicial complexes, their Laplacians and eigenvalue interlacing."""
from .complex import (
    Simplex,
    WeightedComplex,
    build_complex,
    complex_from_faces,
    is_subcomplex,
    nonzero_part,
    proper_difference,
    skeleton,
)
from .cochain import (
    LaplacianMatrix,
    coboundary,
    down_laplacian,
    formal_adjoint,
    full_laplacian,
    laplacian,
    normalize_weights,
    relative_laplacian,
    up_laplacian,
)
from .spectra import Spectrum, cohomology_dim, eigenvalues, exact_rank, hodge_check

__version__ = "0.1.0"
