"""
Demo: The classical problem -y'' = λy on [0, π].

Demonstrates:
- Building a spectral inventory in an explicit window
- Ghost classes and oscillation counts
- Indices, numbers and the check suite
- The comparison bound holding with equality
"""
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

from src.analysis.report import index_report
from src.coefficients.fixtures import classical_problem
from src.coefficients.interval import Interval
from src.coefficients.piecewise import Sign
from src.spectrum.inventory import build_inventory
from src.spectrum.window import Rectangle, SpectralWindow


def main():
    print("=" * 60)
    print("DEMO: Classical Dirichlet Problem")
    print("=" * 60)
    print()

    prob = classical_problem()
    window = SpectralWindow(Interval(0.5, 50.0), Rectangle(-10.0, 10.0, 0.5, 10.0))
    print(f"Problem: {prob.name} on [{prob.a}, {prob.b:.6f}]")
    print(f"Window:  real [{window.real_range.a}, {window.real_range.b}], rectangle {window.complex_rect.as_tuple()}\n")

    inv = build_inventory(prob, window)

    print("Real eigenvalues (expected n²):")
    print("-" * 60)
    for k, e in enumerate(inv.real_pairs, 1):
        print(f"  λ = {e.lam.real:14.10f}   n² = {k * k:3d}   zeros = {e.osc_count}   {e.ghost_class.label}")
    print()

    cert = inv.certificate
    print("Certificate:")
    print("-" * 60)
    print(f"  Contour count: {cert.rect_count}")
    print(f"  Found:         {cert.found_count}")
    print(f"  Match:         {cert.match}")
    print()

    rep = index_report(inv, Sign.POSITIVE, properties=True)
    print("Indices:")
    print("-" * 60)
    print(f"  n_R = {rep.n_R}   n_H = {rep.n_H}")
    print(f"  Λ_H = {rep.Lambda_H:.10f}   Λ_R = {rep.Lambda_R:.10f}")
    print(f"  Stability margin: {rep.stability_margin}")
    print()

    print("Checks:")
    print("-" * 60)
    for check in rep.checks:
        print(f"  {check.name:40s} {check.status.value}")

    print()
    print("=" * 60)
    print("Demo completed successfully!")
    print("=" * 60)


if __name__ == "__main__":
    main()
