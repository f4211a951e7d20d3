"""
Run the demo scripts in sequence.

    python scripts/run_all_demos.py            # pause between demos
    python scripts/run_all_demos.py --no-pause
"""
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

import subprocess

DEMOS = [
    ("demo_classical.py", "Classical Dirichlet Problem"),
    ("demo_sign_weight.py", "Sign-Changing Weight"),
    ("demo_two_turning_points.py", "Two Turning Points"),
]


def run_demo(script_name: str, description: str, pause: bool) -> bool:
    """Run one demo in a subprocess; False on a nonzero exit code"""
    print("\n" + "=" * 60)
    print(f"   Running: {description}")
    print("=" * 60)
    print()

    result = subprocess.run([sys.executable, str(Path(__file__).parent / script_name)])
    if result.returncode != 0:
        print(f"\nDemo failed with exit code {result.returncode}")
        return False

    if pause:
        print("\nPress Enter to continue to next demo...")
        input()
    return True


def main():
    pause = "--no-pause" not in sys.argv[1:]
    print("=" * 60)
    print("   Non-Definite Sturm-Liouville Problems - Demo Suite")
    print("=" * 60)

    for script, description in DEMOS:
        if not run_demo(script, description, pause):
            print("\nDemo suite stopped due to error.")
            sys.exit(1)

    print("\n" + "=" * 60)
    print("   All Demos Completed Successfully!")
    print("=" * 60)
    print()
    print("Next steps:")
    print("  - sturmghost reproduce qm22 for a published example")
    print("  - sturmghost-server and http://localhost:8000/docs for the HTTP API")
    print("  - Read the README.md for more information")
    print()


if __name__ == "__main__":
    main()
