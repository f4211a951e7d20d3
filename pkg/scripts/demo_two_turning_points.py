"""
Demo: Two turning points, w = 1 on [0, 1) and -1 on [1, 4].

Demonstrates:
- The exact eigenvalue λ = 0
- Non-real eigenvalues found by the argument principle
- Cross-checking the inventory against the finite-difference oracle
"""
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

from src.coefficients.fixtures import two_turning_point_problem
from src.oracle.extrapolate import agreement_check, extrapolate
from src.spectrum.inventory import build_inventory


def main():
    print("=" * 60)
    print("DEMO: Two Turning Points")
    print("=" * 60)
    print()

    prob = two_turning_point_problem()
    inv = build_inventory(prob)
    window = inv.window
    print(f"Window: real [{window.real_range.a:.3f}, {window.real_range.b:.3f}], "
          f"rectangle {tuple(round(v, 3) for v in window.complex_rect.as_tuple())}\n")

    print("Real eigenvalues near the origin:")
    print("-" * 60)
    for e in inv.real_pairs:
        if abs(e.lam.real) < 25.0:
            flag = "  (λ = 0)" if e.ghost_class.zero_eigenvalue else ""
            print(f"  λ = {e.lam.real:+12.8f}   zeros = {e.osc_count}   {e.ghost_class.label}{flag}")
    print()

    print("Non-real eigenvalues (upper half-plane):")
    print("-" * 60)
    for e in inv.complex_pairs:
        print(f"  λ = {e.lam.real:+.8f} {e.lam.imag:+.8f}i   {e.ghost_class.label}")
    print(f"  Certificate: contour {inv.certificate.rect_count}, found {inv.certificate.found_count}")
    print()

    print("Finite-difference oracle (399 interior nodes):")
    print("-" * 60)
    check = agreement_check(inv, extrapolate(prob, 399))
    print(f"  Worst distance / tolerance: {check.lhs:.3e}")
    print(f"  Status: {check.status.value}")

    print()
    print("=" * 60)
    print("Demo completed successfully!")
    print("=" * 60)


if __name__ == "__main__":
    main()
