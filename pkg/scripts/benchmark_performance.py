"""
Performance benchmarks for the numerical kernels.

Measures characteristic-function throughput, contour counts, the oracle
eigensolver and full inventories. The first call of each benchmark is
timed separately; for the eigensolver it includes numba compilation.
"""
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

import statistics
import time
from typing import Callable, List

import numpy as np

from src.coefficients.fixtures import classical_problem, sign_weight_problem, two_turning_point_problem
from src.oracle.discretize import discretize
from src.oracle.eigensolver import pencil_eigenvalues
from src.shooting.propagator import characteristic
from src.spectrum.contour import count_rect
from src.spectrum.inventory import build_inventory
from src.spectrum.window import Rectangle


class BenchmarkResults:
    """Container for benchmark results"""

    def __init__(self, name: str, unit: str = "calls"):
        self.name = name
        self.unit = unit
        self.latencies: List[float] = []
        self.total_events: int = 0
        self.warmup: float = 0.0

    @property
    def total_time(self) -> float:
        return sum(self.latencies)

    @property
    def throughput(self) -> float:
        """Events per second"""
        if self.total_time > 0:
            return self.total_events / self.total_time
        return 0

    @property
    def mean_latency(self) -> float:
        """Mean latency in milliseconds"""
        if self.latencies:
            return statistics.mean(self.latencies) * 1e3
        return 0

    @property
    def p50_latency(self) -> float:
        """Median latency in milliseconds"""
        if self.latencies:
            return statistics.median(self.latencies) * 1e3
        return 0

    def print_results(self):
        """Print formatted benchmark results"""
        print(f"\n{self.name}")
        print("-" * 60)
        print(f"  First call:         {self.warmup * 1e3:.1f} ms")
        print(f"  Repetitions:        {len(self.latencies)}")
        print(f"  Throughput:         {self.throughput:,.1f} {self.unit}/sec")
        print(f"  Mean Latency:       {self.mean_latency:.3f} ms")
        print(f"  Median Latency:     {self.p50_latency:.3f} ms")


def _timed(results: BenchmarkResults, func: Callable[[], object], repeats: int, events: int) -> BenchmarkResults:
    start = time.perf_counter()
    func()
    results.warmup = time.perf_counter() - start
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        results.latencies.append(time.perf_counter() - start)
    results.total_events = repeats * events
    return results


def benchmark_characteristic(batch: int = 2000, repeats: int = 20) -> BenchmarkResults:
    """D(λ) on a batch of complex λ for the two-turning-point problem"""
    prob = two_turning_point_problem()
    rng = np.random.default_rng(0)
    lams = rng.uniform(-50.0, 50.0, batch) + 1j * rng.uniform(0.0, 20.0, batch)
    results = BenchmarkResults(f"Characteristic Function ({batch:,} λ per batch)", unit="λ")
    return _timed(results, lambda: characteristic(prob, lams), repeats, batch)


def benchmark_contour_count(repeats: int = 10) -> BenchmarkResults:
    """Argument-principle count on a rectangle holding one non-real pair"""
    prob = sign_weight_problem(-3.0)
    rect = Rectangle(-6.0, 6.0, 0.1, 6.0)
    results = BenchmarkResults("Contour Count (P1, q = -3)", unit="rectangles")
    return _timed(results, lambda: count_rect(prob, rect), repeats, 1)


def benchmark_eigensolver(n_interior: int, repeats: int = 5) -> BenchmarkResults:
    """Balanced Hessenberg QR on the oracle pencil"""
    dop = discretize(two_turning_point_problem(), n_interior)
    results = BenchmarkResults(f"Oracle Eigensolver ({dop.size} x {dop.size})", unit="pencils")
    return _timed(results, lambda: pencil_eigenvalues(dop), repeats, 1)


def benchmark_inventory(repeats: int = 3) -> BenchmarkResults:
    """Default-window inventory of the classical problem, classification included"""
    prob = classical_problem()
    results = BenchmarkResults("Full Inventory (P0, default window)", unit="inventories")
    return _timed(results, lambda: build_inventory(prob), repeats, 1)


def main():
    print("=" * 60)
    print("  PERFORMANCE BENCHMARK SUITE")
    print("=" * 60)
    print()
    print("Timing numerical kernels; first calls are reported separately.")
    print()

    benchmarks = [
        lambda: benchmark_characteristic(),
        lambda: benchmark_contour_count(),
        lambda: benchmark_eigensolver(99),
        lambda: benchmark_eigensolver(399),
        lambda: benchmark_inventory(),
    ]

    all_results = []
    for i, bench in enumerate(benchmarks, 1):
        print(f"[{i}/{len(benchmarks)}] Running...")
        result = bench()
        all_results.append(result)
        result.print_results()

    print("\n" + "=" * 60)
    print("  SUMMARY")
    print("=" * 60)
    for result in all_results:
        print(f"    {result.name.split('(')[0]:30s} {result.throughput:>12,.1f} {result.unit}/sec")
    print()
    print("=" * 60)
    print("  Benchmark completed!")
    print("=" * 60)


if __name__ == "__main__":
    main()
