"""
Richardson and Haupt indices and numbers, as observed in a window.

    n_R  smallest n with every observed count >= n present
    n_H  smallest n >= n_R with every observed count >= n present exactly once
    Λ_H  smallest eigenvalue whose eigenfunction has n_R zeros
    Λ_R  smallest eigenvalue whose eigenfunction has n_H zeros
"""
from dataclasses import dataclass
import logging

from .profile import OscillationProfile, require_nonempty

logger = logging.getLogger(__name__)

MIN_STABILITY_MARGIN = 5


@dataclass(frozen=True)
class Indices:
    """
    Attributes:
        n_R: Richardson index
        n_H: Haupt index
        Lambda_R: Richardson number (= λ_{n_H})
        Lambda_H: Haupt number (= λ_{n_R})
        stability_margin: Counts above n_H realized exactly once in the window
    """
    n_R: int
    n_H: int
    Lambda_R: float
    Lambda_H: float
    stability_margin: int

    @property
    def window_too_small(self) -> bool:
        return self.stability_margin < MIN_STABILITY_MARGIN


def indices(prof: OscillationProfile) -> Indices:
    """
    Indices and numbers of a profile.

    Raises:
        WindowTooSmallError: Empty profile
    """
    require_nonempty(prof)
    counts = prof.counts
    top = counts[-1]

    n_R = top
    while n_R - 1 >= 0 and prof.multiplicity(n_R - 1) > 0:
        n_R -= 1

    n_H = top
    while n_H - 1 >= n_R and prof.multiplicity(n_H - 1) == 1:
        n_H -= 1
    # the tail itself may hold a repeated count at the top
    if prof.multiplicity(n_H) != 1:
        n_H = top + 1

    Lambda_H = prof.eigenvalues(n_R)[0]
    Lambda_R = prof.eigenvalues(n_H)[0] if n_H <= top else float("nan")
    margin = max(top - n_H, 0) if n_H <= top else 0

    result = Indices(n_R=n_R, n_H=n_H, Lambda_R=Lambda_R, Lambda_H=Lambda_H, stability_margin=margin)
    if result.window_too_small:
        logger.warning(f"Only {margin} stabilized counts above n_H={n_H}: window too small")
    return result


@dataclass(frozen=True)
class IndexReport:
    """
    Indices of one side plus the ghost counts they are bounded by and the
    checks run against them.

    Attributes:
        m_pairs: Distinct non-real eigenvalues in the upper half-plane
        n_deg: Distinct real eigenvalues with degenerate real ghost eigenfunctions
        checks: CheckRecords, filled by the check suite
    """
    n_R: int
    n_H: int
    Lambda_R: float
    Lambda_H: float
    m_pairs: int
    n_deg: int
    stability_margin: int
    profile: OscillationProfile
    checks: tuple = ()

    @property
    def side(self):
        return self.profile.side

    @property
    def window_too_small(self) -> bool:
        return self.stability_margin < MIN_STABILITY_MARGIN

    @property
    def failed_checks(self) -> list:
        return [c for c in self.checks if c.is_failure]

    def lowest_by_count(self) -> dict:
        """Smallest eigenvalue of every observed count"""
        return {n: values[0] for n, values in self.profile.entries.items()}
