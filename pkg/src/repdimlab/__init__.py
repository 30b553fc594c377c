"""Exact computations with representations of quiver algebras, their endomorphism rings and
homological dimensions, aimed at generators of Beilinson algebras."""
from .decompose import decompose
from .derived import ghost_certificate, level_upper_certificate
from .endo import end_algebra, fd_global_dimension
from .homalg import global_dimension, m_resolution, min_proj_resolution, projective_dimension
from .linalg import FieldSpec
from .quiver import QuiverAlgebra, build_beilinson, build_exterior
from .reps import hom_basis, hom_dim, injective, projective, simple

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "QuiverAlgebra", "build_beilinson", "build_exterior", "decompose", "end_algebra",
    "fd_global_dimension", "ghost_certificate", "global_dimension", "hom_basis", "hom_dim", "injective",
    "level_upper_certificate", "m_resolution", "min_proj_resolution", "projective", "projective_dimension",
    "simple", "__version__",
]
