"""
Eigenvalue location: real scan, argument-principle counting, complex search
and the certified inventory.
"""

from .window import Rectangle, SpectralWindow, default_window
from .eigenpair import Eigenpair, make_eigenpair
from .contour import count_rect, winding_number
from .real_scan import RealScan, TangencyCandidate, scan_real
from .complex_roots import ComplexSearch, FlaggedRect, find_complex, muller, newton
from .inventory import Certificate, SpectralInventory, build_inventory

__all__ = [
    "Rectangle",
    "SpectralWindow",
    "default_window",
    "Eigenpair",
    "make_eigenpair",
    "count_rect",
    "winding_number",
    "RealScan",
    "TangencyCandidate",
    "scan_real",
    "ComplexSearch",
    "FlaggedRect",
    "find_complex",
    "muller",
    "newton",
    "Certificate",
    "SpectralInventory",
    "build_inventory",
]
