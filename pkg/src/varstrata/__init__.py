"""Rank strata of complexes, chain maps, subcomplexes and sl2-equivariant maps,
with exact closed forms checked against orbit, solver and census oracles."""

from .complexes import (Complex, ChainMap, adapted_decomposition, homology_profile,
                        hom0_dimension_oracle, validate_chain_map, validate_complex)
from .errors import (InterpolationError, ParseError, PreconditionError, RankError,
                     ResourceError, ShapeError, ValidationError, VarstrataError)
from .linalg import GF, QQ, Matrix
from .repring import RepClass
from .strata import StratumSpec

__version__ = "0.1.0"

__all__ = [
    "ChainMap", "Complex", "GF", "InterpolationError", "Matrix", "ParseError",
    "PreconditionError", "QQ", "RankError", "RepClass", "ResourceError", "ShapeError",
    "StratumSpec", "ValidationError", "VarstrataError", "adapted_decomposition",
    "hom0_dimension_oracle", "homology_profile", "validate_chain_map", "validate_complex",
]
