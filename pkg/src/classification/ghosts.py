"""
Ghost taxonomy for eigenfunctions of non-definite problems.

    ordinary                   real λ, λ ∫u²w > 0
    degenerate_real_ghost      real λ, ∫u²w = 0
    nondegenerate_real_ghost   real λ, λ ∫u²w < 0
    complex_ghost_degenerate   non-real λ, ∫φ²w = 0
    complex_ghost_nondegenerate  non-real λ otherwise
"""
from dataclasses import dataclass
from enum import Enum


class GhostTag(Enum):
    ORDINARY = "ordinary"
    DEGENERATE_REAL = "degenerate_real_ghost"
    NONDEGENERATE_REAL = "nondegenerate_real_ghost"
    COMPLEX_DEGENERATE = "complex_ghost_degenerate"
    COMPLEX_NONDEGENERATE = "complex_ghost_nondegenerate"

    @property
    def is_complex(self) -> bool:
        return self in (GhostTag.COMPLEX_DEGENERATE, GhostTag.COMPLEX_NONDEGENERATE)

    @property
    def is_ghost(self) -> bool:
        return self is not GhostTag.ORDINARY


@dataclass(frozen=True)
class GhostClass:
    """
    Attributes:
        tag: Class of the eigenfunction
        ground_state: Real eigenfunction without interior zeros
        borderline: The deciding quantity lies near the band edge: ∫u²w inside
            the degeneracy band but not clearly zero (tag degenerate), or
            λ∫u²w inside the band with ∫u²w outside it (tag by sign)
        zero_eigenvalue: λ = 0, where the sign test is undefined
    """
    tag: GhostTag
    ground_state: bool = False
    borderline: bool = False
    zero_eigenvalue: bool = False

    def __post_init__(self):
        if self.ground_state and self.tag.is_complex:
            raise ValueError("ground_state applies to real eigenfunctions only")

    @property
    def label(self) -> str:
        return self.tag.value
