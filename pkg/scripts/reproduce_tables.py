#!/usr/bin/env python3
"""Reproduce the exact-vs-VQE energy tables for all four ring families.

Prints one table per family (N = 1..8): exact Casimir energy, partitioned
VQE energy, and the signed percent difference.
"""

import time

from ringcasimir import ModeFamily, VqeConfig, partitioned_run

FAMILIES = ["boson-periodic", "boson-twisted", "fermion-periodic", "fermion-twisted"]


def main():
    cfg = VqeConfig(seed=7)
    start = time.perf_counter()
    for label in FAMILIES:
        print(f"\n=== {label} ===")
        print(f"{'n':>2}  {'exact':>10}  {'vqe':>10}  {'pct diff':>10}")
        for n in range(1, 9):
            report = partitioned_run(ModeFamily.from_label(label, n), cfg)
            print(
                f"{n:>2}  {report.exact_energy:>10.4f}  {report.vqe_energy:>10.4f}"
                f"  {report.percent_difference:>10.2e}"
            )
    print(f"\ntotal time: {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
