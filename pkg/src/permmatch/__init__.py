"""Permutation pattern matching for classical, vincular, bivincular, mesh,
boxed mesh and consecutive patterns."""

from .patterns import (
    Bivincular,
    Boxed,
    Classical,
    Consecutive,
    Mesh,
    MeshPattern,
    Vincular,
    is_occurrence,
    parse_pattern,
    print_pattern,
    to_mesh,
)
from .perm import Permutation, parse_permutation, standardize

__version__ = "0.1.0"
