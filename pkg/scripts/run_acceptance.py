#!/usr/bin/env python3
"""Run the exactness gate and the desk-scale acceptance sweeps.

Writes one CSV per run under results/ and stops at the first failure.
"""
import sys
import time
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from main import main as cli

RESULTS = Path(__file__).parent.parent / 'results'

RUNS = [
    ("findmin_q20", ["run", "--algo", "findmin", "--n", "64", "--p", "0.1", "--q", "0.2",
                     "--trials", "2000", "--expect-success", "0.77"]),
    ("findmin_q05", ["run", "--algo", "findmin", "--n", "64", "--p", "0.1", "--q", "0.05",
                     "--trials", "2000", "--expect-success", "0.935"]),
    ("tournament_64", ["run", "--algo", "tournament", "--n", "64", "--p", "0.1",
                       "--trials", "10000", "--expect-success", "0.99"]),
    ("tournament_256", ["run", "--algo", "tournament", "--n", "256", "--p", "0.1",
                        "--trials", "10000", "--expect-success", "0.99"]),
    ("findone_dense_256", ["run", "--algo", "findone-dense", "--n", "256", "--p", "0.1",
                           "--trials", "10000", "--expect-success", "0.99"]),
    ("ftmin_worst_case", ["run", "--algo", "ftmin", "--mode", "worst-case", "--n", "4096",
                          "--k", "256", "--p", "0.1", "--trials", "500",
                          "--expect-success", "0.95"]),
    ("ftmin_expected", ["run", "--algo", "ftmin", "--mode", "expected", "--n", "4096",
                        "--k", "256", "--p", "0.1", "--trials", "500",
                        "--expect-success", "0.95"]),
    ("k_scaling", ["sweep", "--algo", "reduction-tournament", "--n", "4096",
                   "--k", "64", "128", "256", "512", "1024", "--p", "0.1", "--trials", "50"]),
]


def main():
    print("Exactness gate...")
    started = time.perf_counter()
    code = cli(["verify"])
    print(f"  verify: exit {code} in {time.perf_counter() - started:.1f}s")
    if code != 0:
        return code

    RESULTS.mkdir(exist_ok=True)
    for name, args in RUNS:
        out = RESULTS / f"{name}.csv"
        started = time.perf_counter()
        code = cli(args + ["--out", str(out)])
        print(f"  {name}: exit {code} in {time.perf_counter() - started:.1f}s -> {out}")
        if code != 0:
            return code

    print("All acceptance runs passed")
    return 0


if __name__ == '__main__':
    sys.exit(main())
