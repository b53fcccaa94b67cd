"""Relative outer automorphism groups of RAAGs, coset complexes and their homology."""

from .errors import RaagError, SizeLimitError, SpecError
from .graphs import Graph
from .relgroup import RelOutSpec

__all__ = ["Graph", "RaagError", "RelOutSpec", "SizeLimitError", "SpecError"]
__version__ = "0.1.0"
