"""Benchmark the compiled Monte Carlo kernel against the pure-Python twin.

Usage: python benchmarks/bench_backends.py [n_runs]

Both backends produce bit-identical output (asserted below), so the only
difference is speed.
"""

import sys
import time

import numpy as np

from ransomgame import (AttackerStrategy, FixedValue, GameEnvironment, SeedSpec,
                        available_backends)
from ransomgame.simulate import SimulationConfig, run_batch


def bench(n_runs: int = 1_000_000, repeats: int = 3):
    config = SimulationConfig(
        strategy=AttackerStrategy(4.68, 0.091, 0.104),
        environment=GameEnvironment(i_fifty=0.02, target_value=FixedValue(1.0)),
        n_runs=n_runs, seed=SeedSpec(12345))

    results = {}
    for backend in available_backends():
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            report = run_batch(config, backend=backend)
            best = min(best, time.perf_counter() - start)
        results[backend] = (best, report)

    print(f"{n_runs:,} simulated negotiations per batch, best of {repeats}:")
    for backend, (seconds, report) in sorted(results.items()):
        rate = n_runs / seconds
        print(f"  {backend:9s} {seconds:8.3f} s   {rate:12,.0f} runs/s   "
              f"mean profit {report.mean_attacker_profit:.6f}")

    if len(results) == 2:
        ratio = results["python"][0] / results["compiled"][0]
        print(f"  speedup: {ratio:.1f}x")
        a = results["compiled"][1]
        b = results["python"][1]
        assert a.mean_attacker_profit == b.mean_attacker_profit
        assert a.outcome_counts == b.outcome_counts
        print("  outputs bit-identical across backends")
    else:
        print("  compiled kernel not built; only the pure-Python backend ran")


if __name__ == "__main__":
    bench(int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000)
