"""
Oscillation profiles: eigenvalues of one side of the real axis grouped by
the number of zeros of their eigenfunctions.
"""
from dataclasses import dataclass
import logging
from typing import Dict, List, Tuple

from ..classification.classify import annotate_inventory
from ..coefficients.piecewise import Sign
from ..errors import UncertifiedInventoryError, WindowTooSmallError
from ..spectrum.inventory import SpectralInventory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OscillationProfile:
    """
    Attributes:
        side: Sign.POSITIVE (λ >= 0) or Sign.NEGATIVE (λ < 0, stored as -λ)
        entries: Oscillation count -> sorted eigenvalues on that side
        window_top: Largest |λ| scanned on that side
    """
    side: Sign
    entries: Dict[int, Tuple[float, ...]]
    window_top: float

    @property
    def counts(self) -> List[int]:
        return sorted(self.entries)

    def eigenvalues(self, count: int) -> Tuple[float, ...]:
        return self.entries.get(count, ())

    def multiplicity(self, count: int) -> int:
        """Number of eigenvalues whose eigenfunctions have `count` zeros"""
        return len(self.entries.get(count, ()))

    @property
    def is_empty(self) -> bool:
        return not self.entries


def profile(inv: SpectralInventory, side: Sign = Sign.POSITIVE) -> OscillationProfile:
    """
    Tabulate oscillation counts of one side of a certified inventory.

    The negative side is the positive side of the reflected problem
    (λ -> -λ, w -> -w): eigenfunctions are shared, eigenvalues change sign.

    Raises:
        UncertifiedInventoryError: Certificate did not match
    """
    if not inv.is_certified:
        raise UncertifiedInventoryError(
            f"Inventory of {inv.problem.name} is not certified: contour count "
            f"{inv.certificate.rect_count}, refined {inv.certificate.found_count}"
        )
    if not inv.is_classified:
        inv = annotate_inventory(inv)

    entries: Dict[int, List[float]] = {}
    for e in inv.real_pairs:
        lam = e.lam.real
        if side is Sign.POSITIVE and lam >= 0.0:
            entries.setdefault(e.osc_count, []).append(lam)
        elif side is Sign.NEGATIVE and lam < 0.0:
            entries.setdefault(e.osc_count, []).append(-lam)

    top = inv.window.real_range.b if side is Sign.POSITIVE else -inv.window.real_range.a
    return OscillationProfile(
        side=side,
        entries={n: tuple(sorted(v)) for n, v in sorted(entries.items())},
        window_top=max(top, 0.0),
    )


def require_nonempty(prof: OscillationProfile) -> None:
    if prof.is_empty:
        raise WindowTooSmallError(f"No real eigenvalues on the {prof.side.value} side of the window")
