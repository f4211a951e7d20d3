"""
Demo: Sign-changing weight w = sgn x on [-1, 1].

Demonstrates:
- Non-real eigenvalues appearing as the potential well deepens
- Real ghosts and their weighted integrals
- Richardson and Haupt indices bounded below by the ghost counts
"""
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

from src.analysis.report import index_report
from src.coefficients.definiteness import definiteness_report
from src.coefficients.fixtures import sign_weight_problem
from src.coefficients.piecewise import Sign
from src.spectrum.inventory import build_inventory


def show(q: float):
    prob = sign_weight_problem(q)
    report = definiteness_report(prob)
    print(f"\n{prob.name}: {report.definiteness.value}, μ0 = {report.auxiliary_eigenvalue:.6f}")
    print("-" * 60)

    inv = build_inventory(prob)
    for e in inv.complex_pairs:
        print(f"  λ = {e.lam.real:+.8f} {e.lam.imag:+.8f}i   {e.ghost_class.label}")
    for e in inv.real_pairs:
        if e.ghost_class.tag.is_ghost:
            print(f"  λ = {e.lam.real:+.8f}   zeros = {e.osc_count}   {e.ghost_class.label}"
                  f"   |∫u²w|/∫u²|w| = {e.forms.relative_weighted_sq:.3e}")

    rep = index_report(inv, Sign.POSITIVE)
    print(f"  m = {rep.m_pairs}  n_deg = {rep.n_deg}  n_R = {rep.n_R}  n_H = {rep.n_H}")
    print(f"  Λ_H = {rep.Lambda_H:.8f}  Λ_R = {rep.Lambda_R:.8f}")
    failed = [c.name for c in rep.failed_checks]
    print(f"  Failed checks: {failed or 'none'}")


def main():
    print("=" * 60)
    print("DEMO: Sign-Changing Weight")
    print("=" * 60)

    for q in (3.0, -3.0, -15.0, -22.0):
        show(q)

    print()
    print("=" * 60)
    print("Demo completed successfully!")
    print("=" * 60)


if __name__ == "__main__":
    main()
