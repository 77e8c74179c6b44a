"""Time Grassmann multiplication and supermatrix work on each kernel backend.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import sys
import timeit
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from berezin import kernel  # noqa: E402
from berezin.supermatrix import sm_inv, sm_mul, sm_sdet  # noqa: E402
from helpers import rand_grassmann, rand_invertible_supermatrix  # noqa: E402


def workloads(rng):
    dense = [rand_grassmann(rng, 10, density=0.5) for _ in range(20)]
    mats = [rand_invertible_supermatrix(rng, 3, 3, 6) for _ in range(4)]

    def gmul():
        for a, b in zip(dense, dense[1:]):
            a * b

    def smat():
        for x, y in zip(mats, mats[1:]):
            sm_sdet(sm_mul(x, sm_inv(y)))
    return {"grassmann mul (rank 10)": gmul, "supermatrix mul/inv/sdet (3|3, rank 6)": smat}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    jobs = workloads(random.Random(0))
    for name in sorted(kernel.backends()):
        prev = kernel.use(name)
        for label, fn in jobs.items():
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            print(f"{name:8s} {label:42s} {best * 1e3:9.2f} ms")
        kernel.use(prev)


if __name__ == "__main__":
    main()
